#pragma once

// The two-mode squeezed vacuum state: Fock-basis Schmidt coefficients and the
// closed-form entanglement entropy of the pure state.

#include <vector>

#include "tmsv/errors.hpp"

namespace tmsv {

struct SqueezeParams {
  double r;

  // Validates 0 <= r < 20; past that tanh^2 r is indistinguishable from one
  // in double precision and every truncation fails.
  explicit SqueezeParams(double r_in);
};

struct SchmidtDistribution {
  std::vector<double> probs;  // p_n = tanh^{2n} r / cosh^2 r, n = 0..truncation
  int truncation = 0;
  double tail_mass = 0.0;  // tanh^{2(truncation+1)} r
};

// Smallest N with tanh^{2(N+1)} r <= tail_ceiling.
int minimal_truncation(double r, double tail_ceiling);

// Throws TruncationError (naming the minimal adequate N) if the tail mass
// exceeds the ceiling.
SchmidtDistribution schmidt_distribution(const SqueezeParams& params, int trunc,
                                         double tail_ceiling = 1e-12);

// cosh^2 r log2 cosh^2 r - sinh^2 r log2 sinh^2 r, with the r = 0 limit
// returning exactly zero.
double pure_entanglement_bits(const SqueezeParams& params);

}  // namespace tmsv
