#pragma once

// Thermal amplitude damping of the two-mode squeezed vacuum: the analytic
// channel parameters, the Fock-basis block coefficients c^(k), the convex
// block decomposition, and the convexity upper bound on the relative entropy
// of entanglement. Also hosts the closed-form separability border of the
// thermal channel.

#include <optional>
#include <vector>

#include "tmsv/entanglement.hpp"
#include "tmsv/errors.hpp"
#include "tmsv/numerics.hpp"

namespace tmsv {

struct AmplitudePoint {
  double r;     // squeezing parameter
  double d;     // degree of damping, gamma * t
  double nbar;  // mean photon number of the thermal environment

  AmplitudePoint(double r_in, double d_in, double nbar_in);
};

// Below this squeezing the state is treated as vacuum: coth r diverges and
// the physically exact answer (zero entanglement) is known.
inline constexpr double kDegenerateSqueezing = 1e-8;

struct ChannelParams {
  double n_t;    // n(t) = nbar (1 - e^{-d})
  double P;      // coherence factor, in [0, 1)
  double Q;      // thermal factor, in [0, 1)
  double R;      // overall normalization, > 0
  double decay;  // e^{-d}
};

// nullopt signals the degenerate vacuum case (r <= kDegenerateSqueezing);
// callers should report zero entanglement. d == 0 takes the exact algebraic
// limit P = tanh r, Q = 0, R = tanh^2 r, which keeps t = 0 results
// bit-identical across nbar.
std::optional<ChannelParams> channel_params(const AmplitudePoint& point);

// c^(k)_{n1,n2}: sqrt(n1! n2! (n1+k)! (n2+k)!)/sinh^2 r * P^{n1+n2} Q^k R
// * sum_l (Q/P)^{2l} / (l! (l+k)! (n1-l)! (n2-l)!), evaluated entirely in the
// log domain (each summand carries P^{n1+n2-2l} Q^{2l}, so P = 0 and Q = 0
// limits need no special casing beyond 0^0 = 1).
double block_coefficient(int k, int n1, int n2, const ChannelParams& cp,
                         double r);

// Unnormalized (N+1)x(N+1) coefficient matrix [c^(k)] for one block. The
// upper triangle is computed and mirrored, so the matrix is exactly
// symmetric.
SymmetricMatrix raw_block_matrix(int k, const ChannelParams& cp, double r,
                                 int trunc);

struct BlockDecomposition {
  double p0 = 0.0;                      // weight of the diagonal block
  SymmetricMatrix block0;               // c^(0) / p0, unit trace
  std::vector<double> weights;          // p_k for k = 1..k_cutoff
  std::vector<SymmetricMatrix> blocks;  // c^(k) / p_k, unit trace
  int k_cutoff = 0;                     // largest k retained
  double trace_deficit = 0.0;           // 1 - (p0 + 2 sum_k p_k)
};

// Builds raw blocks for k = 0, 1, 2, ... and stops at the first k whose raw
// weight falls below eps_block (the geometric Q^k decay guarantees
// termination). Throws TruncationError if the trace deficit exceeds the
// ceiling.
BlockDecomposition block_decomposition(const AmplitudePoint& point, int trunc,
                                       double eps_block = 1e-12,
                                       double deficit_ceiling = 1e-8);

// E_R* = p0 T(block0) + 2 sum_k p_k T(block_k) with T(M) = Shannon entropy of
// diag(M) minus von Neumann entropy of M. The +k and -k block families share
// one coefficient matrix, so each block's value is computed once and doubled.
EntanglementResult upper_bound_er(const AmplitudePoint& point, int trunc,
                                  double eps_block = 1e-12,
                                  double deficit_ceiling = 1e-8);

// d* = ln[1 + (1 - e^{-2r}) / (2 nbar)]; the state is separable iff d >= d*.
// nbar == 0 has no finite border and returns +infinity.
double separability_border(double r, double nbar);

bool is_separable(const AmplitudePoint& point);

}  // namespace tmsv
