#include "tmsv/squeezed_state.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tmsv/numerics.hpp"

namespace tmsv {

SqueezeParams::SqueezeParams(double r_in) : r(r_in) {
  if (!(r >= 0.0) || !(r < 20.0)) {
    std::ostringstream msg;
    msg << "SqueezeParams: r must satisfy 0 <= r < 20, got " << r_in;
    throw std::invalid_argument(msg.str());
  }
}

int minimal_truncation(double r, double tail_ceiling) {
  if (!(tail_ceiling > 0.0)) {
    throw std::invalid_argument("minimal_truncation: ceiling must be positive");
  }
  if (r == 0.0) return 1;
  const double log_t2 = 2.0 * std::log(std::tanh(r));
  // tanh^{2(N+1)} r <= c  <=>  N+1 >= ln(c) / (2 ln tanh r)
  const double bound = std::log(tail_ceiling) / log_t2 - 1.0;
  const int n = static_cast<int>(std::ceil(bound));
  return n < 1 ? 1 : n;
}

SchmidtDistribution schmidt_distribution(const SqueezeParams& params, int trunc,
                                         double tail_ceiling) {
  if (trunc < 1) {
    throw std::invalid_argument("schmidt_distribution: truncation must be >= 1");
  }
  if (!(tail_ceiling > 0.0)) {
    throw std::invalid_argument("schmidt_distribution: ceiling must be positive");
  }
  const LogWeight log_tanh = LogWeight::from_linear(std::tanh(params.r));
  const double log_cosh2 = 2.0 * std::log(std::cosh(params.r));

  const double tail =
      std::exp(log_pow(log_tanh, 2LL * (trunc + 1)).value);
  if (tail > tail_ceiling) {
    const int adequate = minimal_truncation(params.r, tail_ceiling);
    std::ostringstream msg;
    msg << "schmidt_distribution: tail mass " << tail << " at truncation "
        << trunc << " exceeds ceiling " << tail_ceiling
        << "; the minimal adequate truncation is " << adequate;
    throw TruncationError(msg.str(), adequate);
  }

  SchmidtDistribution dist;
  dist.truncation = trunc;
  dist.tail_mass = tail;
  dist.probs.resize(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n) {
    dist.probs[static_cast<std::size_t>(n)] =
        std::exp(log_pow(log_tanh, 2LL * n).value - log_cosh2);
  }
  return dist;
}

double pure_entanglement_bits(const SqueezeParams& params) {
  if (params.r == 0.0) return 0.0;  // 0 log 0 limit of the sinh term
  const double s2 = std::sinh(params.r) * std::sinh(params.r);
  static const double kLn2 = std::log(2.0);
  // (1+x) log2(1+x) - x log2 x with x = sinh^2 r; log1p keeps small r accurate.
  return (1.0 + s2) * std::log1p(s2) / kLn2 - s2 * std::log2(s2);
}

}  // namespace tmsv
