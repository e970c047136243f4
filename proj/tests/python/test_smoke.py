"""Smoke tests for the python bindings."""

import math

import pytest

import tmsv_decoherence as tmsv


def test_pure_entanglement_matches_closed_form():
    assert tmsv.pure_entanglement_bits(0.0) == 0.0
    assert tmsv.pure_entanglement_bits(1.0) == pytest.approx(
        2.336909300545897, abs=1e-12
    )


def test_schmidt_probabilities_are_geometric():
    probs = tmsv.schmidt_probabilities(1.0, trunc=100)
    assert probs[0] == pytest.approx(1.0 / math.cosh(1.0) ** 2, abs=1e-14)
    ratio = math.tanh(1.0) ** 2
    assert probs[5] / probs[4] == pytest.approx(ratio, abs=1e-12)


def test_phase_relative_entropy_reduces_to_pure_state():
    result = tmsv.phase_relative_entropy(1.0, 0.0)
    assert result.kind == "exact"
    assert result.bits == pytest.approx(tmsv.pure_entanglement_bits(1.0), abs=1e-9)
    assert result.diagnostics.trace_deficit < 1e-12


def test_phase_relative_entropy_decays():
    weak = tmsv.phase_relative_entropy(0.8, 0.1)
    strong = tmsv.phase_relative_entropy(0.8, 1.0)
    assert strong.bits < weak.bits


def test_amplitude_upper_bound():
    result = tmsv.amplitude_upper_bound(1.0, 0.0, nbar=0.01)
    assert result.kind == "upper-bound"
    assert result.bits == pytest.approx(tmsv.pure_entanglement_bits(1.0), abs=1e-9)
    assert result.diagnostics.k_cutoff == 0

    damped = tmsv.amplitude_upper_bound(0.5, 0.4, nbar=0.1, trunc=80)
    assert 0.0 < damped.bits < result.bits
    assert damped.diagnostics.k_cutoff > 0


def test_separability_border():
    assert tmsv.separability_border(0.0, 0.1) == 0.0
    assert tmsv.separability_border(1.0, 0.01) == pytest.approx(
        3.7894764485569077, abs=1e-14
    )
    assert not tmsv.is_separable(0.5, 0.0, 0.1)
    assert tmsv.is_separable(0.5, 10.0, 0.1)


def test_verify_channel_passes():
    report = tmsv.verify_channel("phase", r=0.3, d=0.1, oracle_trunc=8)
    assert report.passed
    assert report.max_abs_deviation < 1e-8


def test_invalid_arguments_raise():
    with pytest.raises(ValueError):
        tmsv.pure_entanglement_bits(-1.0)
    with pytest.raises(ValueError):
        tmsv.verify_channel("neither", r=0.3, d=0.1)
