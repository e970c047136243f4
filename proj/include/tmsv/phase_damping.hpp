#pragma once

// Phase damping of the two-mode squeezed vacuum: the exact decohered density
// matrix in the |n,n><m,m| family and its exact relative entropy of
// entanglement (diagonal Shannon entropy minus von Neumann entropy).

#include "tmsv/entanglement.hpp"
#include "tmsv/errors.hpp"
#include "tmsv/numerics.hpp"

namespace tmsv {

struct PhasePoint {
  double r;  // squeezing parameter
  double d;  // degree of damping, gamma * t

  PhasePoint(double r_in, double d_in);  // validates finite and nonnegative
};

struct PhaseDampedMatrix {
  SymmetricMatrix matrix;  // (N+1) x (N+1) coefficients a_{n1,n2}
  int truncation = 0;
  double trace_deficit = 0.0;  // tanh^{2(N+1)} r
};

// a_{n1,n2} = tanh^{n1+n2} r * exp(-d (n1-n2)^2) / cosh^2 r, built in the log
// domain so large-index entries underflow cleanly instead of misbehaving.
PhaseDampedMatrix build_phase_matrix(const PhasePoint& point, int trunc,
                                     double tail_ceiling = 1e-12);

// Exact value: Shannon entropy of the diagonal minus the von Neumann entropy
// of the full matrix.
EntanglementResult relative_entropy_exact(const PhaseDampedMatrix& m);

// The closest disentangled state is the diagonal part of the matrix.
SymmetricMatrix closest_disentangled_state(const PhaseDampedMatrix& m);

}  // namespace tmsv
