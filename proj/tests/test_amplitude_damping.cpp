#include <cmath>
#include <vector>

#include <doctest.h>

#include "tmsv/amplitude_damping.hpp"
#include "tmsv/master_equation.hpp"
#include "tmsv/phase_damping.hpp"
#include "tmsv/squeezed_state.hpp"
#include "tmsv/sweep.hpp"

using namespace tmsv;

TEST_CASE("point validation and the degenerate vacuum signal") {
  CHECK_THROWS_AS(AmplitudePoint(-1.0, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(AmplitudePoint(0.5, -1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(AmplitudePoint(0.5, 0.0, -0.1), std::invalid_argument);
  CHECK_FALSE(channel_params(AmplitudePoint(0.0, 0.5, 0.1)).has_value());
  CHECK_FALSE(channel_params(AmplitudePoint(1e-9, 0.5, 0.1)).has_value());
  CHECK(channel_params(AmplitudePoint(1e-7, 0.5, 0.1)).has_value());
}

TEST_CASE("channel parameters at t = 0 take the exact limit") {
  // runtime-evaluated reference: the compiler's constant-folded tanh can
  // differ from libm by an ulp
  volatile double r = 0.7;
  const double th = std::tanh(r);
  for (double nbar : {0.0, 0.01, 0.1, 1.0}) {
    const auto cp = channel_params(AmplitudePoint(0.7, 0.0, nbar));
    REQUIRE(cp.has_value());
    CHECK(cp->n_t == 0.0);
    CHECK(cp->P == th);
    CHECK(cp->Q == 0.0);
    CHECK(cp->R == th * th);
    CHECK(cp->decay == 1.0);
  }
}

TEST_CASE("channel parameters stay inside their ranges") {
  for (double r : {0.1, 0.5, 1.0, 1.5, 3.0}) {
    for (double d : {0.01, 0.2, 1.0, 2.0, 10.0}) {
      for (double nbar : {0.0, 0.01, 0.1, 1.0}) {
        const auto cp = channel_params(AmplitudePoint(r, d, nbar));
        REQUIRE(cp.has_value());
        CHECK(cp->R > 0.0);
        CHECK(cp->P >= 0.0);
        CHECK(cp->P < 1.0);
        CHECK(cp->Q >= 0.0);
        CHECK(cp->Q < 1.0);
        CHECK(cp->n_t == doctest::Approx(nbar * (1.0 - std::exp(-d))));
      }
    }
  }
}

TEST_CASE("fully decohered limit approaches the thermal product state") {
  const auto cp = channel_params(AmplitudePoint(0.8, 50.0, 0.1));
  REQUIRE(cp.has_value());
  CHECK(cp->n_t == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(cp->P < 1e-20);
  const auto result = upper_bound_er(AmplitudePoint(0.8, 50.0, 0.1), 60);
  CHECK(result.bits >= 0.0);
  CHECK(result.bits < 1e-9);
}

TEST_CASE("t = 0 coefficients reduce to the pure-state matrix") {
  const double r = 0.6;
  const auto cp = channel_params(AmplitudePoint(r, 0.0, 0.1));
  REQUIRE(cp.has_value());
  const double th = std::tanh(r);
  const double c2 = std::cosh(r) * std::cosh(r);
  for (int n1 = 0; n1 <= 12; ++n1) {
    for (int n2 = 0; n2 <= 12; ++n2) {
      const double expected = std::pow(th, n1 + n2) / c2;
      CHECK(block_coefficient(0, n1, n2, *cp, r) ==
            doctest::Approx(expected).epsilon(1e-13));
      CHECK(block_coefficient(1, n1, n2, *cp, r) == 0.0);
      CHECK(block_coefficient(5, n1, n2, *cp, r) == 0.0);
    }
  }
  // and agrees with the phase-damping builder at d = 0
  const auto pdm = build_phase_matrix(PhasePoint(r, 0.0), 12, /*tail_ceiling=*/1.0);
  const auto raw = raw_block_matrix(0, *cp, r, 12);
  for (std::size_t i = 0; i <= 12; ++i)
    for (std::size_t j = 0; j <= 12; ++j)
      CHECK(raw(i, j) == doctest::Approx(pdm.matrix(i, j)).epsilon(1e-13));
}

TEST_CASE("coefficients are symmetric in the block indices") {
  const auto cp = channel_params(AmplitudePoint(0.4, 0.3, 0.05));
  REQUIRE(cp.has_value());
  for (int k : {0, 1, 3}) {
    for (int n1 = 0; n1 <= 9; ++n1) {
      for (int n2 = n1; n2 <= 9; ++n2) {
        CHECK(block_coefficient(k, n1, n2, *cp, 0.4) ==
              block_coefficient(k, n2, n1, *cp, 0.4));
      }
    }
  }
  const auto raw = raw_block_matrix(2, *cp, 0.4, 20);
  for (std::size_t i = 0; i <= 20; ++i)
    for (std::size_t j = 0; j <= 20; ++j) CHECK(raw(i, j) == raw(j, i));
}

TEST_CASE("coefficients match the master-equation matrix elements") {
  const double r = 0.3, d = 0.2, nbar = 0.01;
  const auto cp = channel_params(AmplitudePoint(r, d, nbar));
  REQUIRE(cp.has_value());
  const IntegrationResult oracle =
      integrate_rk4(DampingModel::Amplitude, r, d, nbar, 12, 200);
  for (int k : {0, 1, 2, 4}) {
    for (int n1 = 0; n1 + k <= 12; ++n1) {
      for (int n2 = 0; n2 + k <= 12; ++n2) {
        const double analytic = block_coefficient(k, n1, n2, *cp, r);
        const double integrated = oracle.state(n1, n1 + k, n2, n2 + k);
        CHECK(std::abs(analytic - integrated) < 1e-6);
      }
    }
  }
}

TEST_CASE("block decomposition at t = 0 is the pure state alone") {
  const auto dec = block_decomposition(AmplitudePoint(0.5, 0.0, 0.1), 60);
  CHECK(dec.blocks.empty());
  CHECK(dec.k_cutoff == 0);
  CHECK(dec.p0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dec.block0.trace() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("block weights close the trace") {
  const auto dec = block_decomposition(AmplitudePoint(0.3, 0.2, 0.01), 60);
  double total = dec.p0;
  for (double w : dec.weights) total += 2.0 * w;
  CHECK(std::abs(total + dec.trace_deficit - 1.0) < 1e-15);
  CHECK(std::abs(total - 1.0) < 1e-10);
  for (const auto& block : dec.blocks) {
    CHECK(block.trace() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("block weights are positive and strictly decreasing") {
  for (double r : {0.3, 0.8, 1.2}) {
    for (double d : {0.1, 0.5, 1.0}) {
      for (double nbar : {0.01, 0.1}) {
        const auto dec = block_decomposition(AmplitudePoint(r, d, nbar), 80);
        REQUIRE(!dec.weights.empty());
        double previous = dec.p0;
        for (double w : dec.weights) {
          CHECK(w > 0.0);
          CHECK(w < previous);
          previous = w;
        }
      }
    }
  }
}

TEST_CASE("upper bound equals the pure-state entropy at t = 0") {
  const auto result = upper_bound_er(AmplitudePoint(1.0, 0.0, 0.01), 100);
  CHECK(result.kind == ResultKind::UpperBound);
  CHECK(std::abs(result.bits - pure_entanglement_bits(SqueezeParams(1.0))) <
        1e-9);
}

TEST_CASE("upper bound at t = 0 is independent of the bath temperature") {
  const auto a = upper_bound_er(AmplitudePoint(0.7, 0.0, 0.01), 80);
  const auto b = upper_bound_er(AmplitudePoint(0.7, 0.0, 0.1), 80);
  const auto c = upper_bound_er(AmplitudePoint(0.7, 0.0, 1.0), 80);
  CHECK(a.bits == b.bits);  // exact: the d = 0 limit never reads nbar
  CHECK(b.bits == c.bits);
}

TEST_CASE("vacuum input carries no entanglement") {
  const auto result = upper_bound_er(AmplitudePoint(0.0, 0.4, 0.1), 40);
  CHECK(result.bits == 0.0);
  CHECK(result.kind == ResultKind::UpperBound);
}

TEST_CASE("truncation gate reports through the deficit ceiling") {
  CHECK_THROWS_AS(
      block_decomposition(AmplitudePoint(1.5, 0.1, 0.1), 20, 1e-12, 1e-8),
      TruncationError);
}

TEST_CASE("separability border closed form") {
  CHECK(separability_border(0.0, 0.1) == 0.0);
  // frozen from direct formula evaluation
  CHECK(separability_border(1.0, 0.01) ==
        doctest::Approx(3.7894764485569077).epsilon(1e-14));
  CHECK(separability_border(30.0, 0.1) ==
        doctest::Approx(std::log(6.0)).epsilon(1e-14));
  CHECK(std::isinf(separability_border(0.5, 0.0)));
  CHECK_THROWS_AS(separability_border(-1.0, 0.1), std::invalid_argument);
}

TEST_CASE("separability flag against the border") {
  CHECK_FALSE(is_separable(AmplitudePoint(0.5, 0.0, 0.1)));
  CHECK(is_separable(AmplitudePoint(0.5, 10.0, 0.1)));
  CHECK(is_separable(AmplitudePoint(0.0, 0.0, 0.1)));
  CHECK_FALSE(is_separable(AmplitudePoint(0.5, 1.0, 0.0)));  // no finite border
}

TEST_CASE("reassembled state matches the master equation elementwise") {
  const VerifyReport report =
      run_verify(SweepModel::Amplitude, 0.3, 0.5, 0.1, 12, 500);
  CHECK(report.passed);
  CHECK(report.max_abs_deviation < 1e-6);
}

TEST_CASE("upper bound value is stable against refinement") {
  const auto base = upper_bound_er(AmplitudePoint(0.5, 0.4, 0.1), 100, 1e-12);
  const auto refined =
      upper_bound_er(AmplitudePoint(0.5, 0.4, 0.1), 120, 1e-13);
  CHECK(base.bits > 0.0);
  CHECK(std::abs(base.bits - refined.bits) < 1e-9);
}
