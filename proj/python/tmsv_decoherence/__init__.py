"""Decoherence of two-mode squeezed vacuum states.

Exact relative entropy of entanglement under phase damping and a convexity
upper bound under thermal amplitude damping, both in a truncated Fock space,
validated against a Runge-Kutta master-equation integrator.
"""

from ._core import (
    Diagnostics,
    EntanglementResult,
    NumericError,
    VerifyReport,
    __version__,
    amplitude_upper_bound,
    is_separable,
    phase_relative_entropy,
    pure_entanglement_bits,
    schmidt_probabilities,
    separability_border,
    verify_channel,
)

__all__ = [
    "Diagnostics",
    "EntanglementResult",
    "NumericError",
    "VerifyReport",
    "__version__",
    "amplitude_upper_bound",
    "is_separable",
    "phase_relative_entropy",
    "pure_entanglement_bits",
    "schmidt_probabilities",
    "separability_border",
    "verify_channel",
]
