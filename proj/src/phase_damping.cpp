#include "tmsv/phase_damping.hpp"

#include <cmath>
#include <sstream>

#include "tmsv/squeezed_state.hpp"

namespace tmsv {

namespace {
constexpr double kPsdTolerance = 1e-10;
constexpr double kEigenTolerance = 1e-12;
}  // namespace

PhasePoint::PhasePoint(double r_in, double d_in) : r(r_in), d(d_in) {
  if (!std::isfinite(r) || !std::isfinite(d) || r < 0.0 || d < 0.0) {
    std::ostringstream msg;
    msg << "PhasePoint: r and d must be finite and nonnegative, got r=" << r_in
        << " d=" << d_in;
    throw std::invalid_argument(msg.str());
  }
}

PhaseDampedMatrix build_phase_matrix(const PhasePoint& point, int trunc,
                                     double tail_ceiling) {
  if (trunc < 1) {
    throw std::invalid_argument("build_phase_matrix: truncation must be >= 1");
  }
  const SqueezeParams params(point.r);  // revalidates the r < 20 bound
  const LogWeight log_tanh = LogWeight::from_linear(std::tanh(params.r));
  const double log_cosh2 = 2.0 * std::log(std::cosh(params.r));

  const double tail = std::exp(log_pow(log_tanh, 2LL * (trunc + 1)).value);
  if (tail > tail_ceiling) {
    const int adequate = minimal_truncation(params.r, tail_ceiling);
    std::ostringstream msg;
    msg << "build_phase_matrix: tail mass " << tail << " at truncation "
        << trunc << " exceeds ceiling " << tail_ceiling
        << "; the minimal adequate truncation is " << adequate;
    throw TruncationError(msg.str(), adequate);
  }

  PhaseDampedMatrix out;
  out.truncation = trunc;
  out.trace_deficit = tail;
  out.matrix = SymmetricMatrix(static_cast<std::size_t>(trunc) + 1);
  for (int i = 0; i <= trunc; ++i) {
    for (int j = i; j <= trunc; ++j) {
      const double gap = static_cast<double>(i - j);
      const double log_entry =
          log_pow(log_tanh, static_cast<long long>(i) + j).value -
          point.d * gap * gap - log_cosh2;
      out.matrix.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                     std::exp(log_entry));
    }
  }
  return out;
}

EntanglementResult relative_entropy_exact(const PhaseDampedMatrix& m) {
  const auto diag = m.matrix.diagonal();
  const double diagonal_entropy = shannon_entropy_bits(diag);
  const Spectrum spectrum = symmetric_eigenvalues(m.matrix, kEigenTolerance);
  const double state_entropy =
      spectrum_entropy_bits(spectrum, m.matrix.trace(), kPsdTolerance, false);

  EntanglementResult result;
  result.bits = diagonal_entropy - state_entropy;
  result.kind = ResultKind::Exact;
  result.diagnostics.trace_deficit = m.trace_deficit;
  result.diagnostics.min_eigenvalue = spectrum.min();
  result.diagnostics.eigensolver_residual = spectrum.residual;
  result.diagnostics.k_cutoff = -1;
  return result;
}

SymmetricMatrix closest_disentangled_state(const PhaseDampedMatrix& m) {
  const std::size_t dim = m.matrix.dim();
  SymmetricMatrix diag(dim);
  for (std::size_t i = 0; i < dim; ++i) diag.set(i, i, m.matrix(i, i));
  return diag;
}

}  // namespace tmsv
