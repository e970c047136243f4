#include "tmsv/amplitude_damping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tmsv {

namespace {

constexpr double kPsdTolerance = 1e-10;
constexpr double kEigenTolerance = 1e-12;

void validate_point(const AmplitudePoint& point, const char* where) {
  if (!std::isfinite(point.r) || !std::isfinite(point.d) ||
      !std::isfinite(point.nbar) || point.r < 0.0 || point.d < 0.0 ||
      point.nbar < 0.0) {
    std::ostringstream msg;
    msg << where << ": r, d, nbar must be finite and nonnegative, got r="
        << point.r << " d=" << point.d << " nbar=" << point.nbar;
    throw std::invalid_argument(msg.str());
  }
  if (point.r >= 20.0) {
    std::ostringstream msg;
    msg << where << ": r must be < 20, got " << point.r;
    throw std::invalid_argument(msg.str());
  }
}

// One log-domain block entry for n1 <= n2. The summand exponents combine
// P^{n1+n2-2l} and Q^{2l+k}, always with nonnegative integer powers, so the
// P = 0 and Q = 0 limits reduce to 0^0 = 1 bookkeeping inside log_pow.
double log_block_entry(int k, int n1, int n2, LogWeight log_p, LogWeight log_q,
                       double log_r_norm, double log_sinh2,
                       std::vector<double>& scratch) {
  const int l_max = std::min(n1, n2);
  scratch.resize(static_cast<std::size_t>(l_max) + 1);
  for (int l = 0; l <= l_max; ++l) {
    scratch[static_cast<std::size_t>(l)] =
        log_pow(log_p, static_cast<long long>(n1) + n2 - 2LL * l).value +
        log_pow(log_q, 2LL * l).value - log_factorial(l) -
        log_factorial(l + k) - log_factorial(n1 - l) - log_factorial(n2 - l);
  }
  const double log_sum = log_sum_exp(scratch);
  return 0.5 * (log_factorial(n1) + log_factorial(n2) +
                log_factorial(n1 + k) + log_factorial(n2 + k)) -
         log_sinh2 + log_pow(log_q, k).value + log_r_norm + log_sum;
}

struct LogChannel {
  LogWeight log_p;
  LogWeight log_q;
  double log_r_norm;
  double log_sinh2;
};

LogChannel log_channel(const ChannelParams& cp, double r) {
  return {LogWeight::from_linear(cp.P), LogWeight::from_linear(cp.Q),
          std::log(cp.R), 2.0 * std::log(std::sinh(r))};
}

}  // namespace

AmplitudePoint::AmplitudePoint(double r_in, double d_in, double nbar_in)
    : r(r_in), d(d_in), nbar(nbar_in) {
  validate_point(*this, "AmplitudePoint");
}

std::optional<ChannelParams> channel_params(const AmplitudePoint& point) {
  if (point.r <= kDegenerateSqueezing) return std::nullopt;

  ChannelParams cp;
  if (point.d == 0.0) {
    // Exact t = 0 limit; also makes d = 0 results independent of nbar at the
    // bit level.
    const double th = std::tanh(point.r);
    cp.n_t = 0.0;
    cp.P = th;
    cp.Q = 0.0;
    cp.R = th * th;
    cp.decay = 1.0;
    return cp;
  }

  cp.decay = std::exp(-point.d);
  cp.n_t = point.nbar * (1.0 - cp.decay);
  const double coth = 1.0 / std::tanh(point.r);
  const double a = coth * (cp.n_t + 1.0);
  const double b = cp.n_t + 1.0 - cp.decay;
  cp.R = 1.0 / (a * a - b * b);
  cp.P = cp.R * cp.decay * coth;
  cp.Q = (cp.n_t + cp.R * cp.decay * b) / (cp.n_t + 1.0);

  // Guaranteed by coth r > 1 and 0 <= n_t+1-decay <= n_t+1; anything else is
  // a bug, not a tolerance issue.
  if (!(cp.R > 0.0) || !(cp.P >= 0.0) || !(cp.P < 1.0) || !(cp.Q >= 0.0) ||
      !(cp.Q < 1.0) || !(cp.n_t >= 0.0)) {
    std::ostringstream msg;
    msg << "channel_params: parameters out of range at r=" << point.r
        << " d=" << point.d << " nbar=" << point.nbar << " (P=" << cp.P
        << " Q=" << cp.Q << " R=" << cp.R << ")";
    throw NumericError(msg.str());
  }
  return cp;
}

double block_coefficient(int k, int n1, int n2, const ChannelParams& cp,
                         double r) {
  if (k < 0 || n1 < 0 || n2 < 0) {
    throw std::invalid_argument("block_coefficient: k, n1, n2 must be >= 0");
  }
  if (n1 > n2) std::swap(n1, n2);  // the formula is symmetric; canonicalize
  const LogChannel lc = log_channel(cp, r);
  std::vector<double> scratch;
  return std::exp(log_block_entry(k, n1, n2, lc.log_p, lc.log_q, lc.log_r_norm,
                                  lc.log_sinh2, scratch));
}

SymmetricMatrix raw_block_matrix(int k, const ChannelParams& cp, double r,
                                 int trunc) {
  if (k < 0 || trunc < 1) {
    throw std::invalid_argument("raw_block_matrix: need k >= 0 and trunc >= 1");
  }
  const LogChannel lc = log_channel(cp, r);
  SymmetricMatrix mtx(static_cast<std::size_t>(trunc) + 1);
  std::vector<double> scratch;
  for (int i = 0; i <= trunc; ++i) {
    for (int j = i; j <= trunc; ++j) {
      const double log_entry = log_block_entry(
          k, i, j, lc.log_p, lc.log_q, lc.log_r_norm, lc.log_sinh2, scratch);
      mtx.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
              std::exp(log_entry));
    }
  }
  return mtx;
}

BlockDecomposition block_decomposition(const AmplitudePoint& point, int trunc,
                                       double eps_block,
                                       double deficit_ceiling) {
  if (trunc < 1) {
    throw std::invalid_argument("block_decomposition: truncation must be >= 1");
  }
  if (!(eps_block > 0.0) || !(deficit_ceiling > 0.0)) {
    throw std::invalid_argument(
        "block_decomposition: eps_block and deficit ceiling must be positive");
  }
  const auto cp = channel_params(point);
  if (!cp) {
    throw std::invalid_argument(
        "block_decomposition: degenerate squeezing (r <= 1e-8); the state is "
        "vacuum and carries no entanglement");
  }

  BlockDecomposition out;
  {
    SymmetricMatrix raw = raw_block_matrix(0, *cp, point.r, trunc);
    out.p0 = raw.trace();
    raw.scale(1.0 / out.p0);
    out.block0 = std::move(raw);
  }
  double weight_sum = out.p0;
  // log_factorial needs n2 + k; its table bounds the largest usable k.
  const int k_limit = 4096 - trunc;
  for (int k = 1; k <= k_limit; ++k) {
    SymmetricMatrix raw = raw_block_matrix(k, *cp, point.r, trunc);
    const double weight = raw.trace();
    if (weight < eps_block) {
      out.k_cutoff = k - 1;
      break;
    }
    raw.scale(1.0 / weight);
    out.weights.push_back(weight);
    out.blocks.push_back(std::move(raw));
    weight_sum += 2.0 * weight;
    out.k_cutoff = k;
  }

  out.trace_deficit = 1.0 - weight_sum;
  if (out.trace_deficit > deficit_ceiling) {
    std::ostringstream msg;
    msg << "block_decomposition: trace deficit " << out.trace_deficit
        << " at truncation " << trunc << " exceeds ceiling " << deficit_ceiling
        << "; increase the truncation";
    throw TruncationError(msg.str(), trunc + 20);
  }
  return out;
}

EntanglementResult upper_bound_er(const AmplitudePoint& point, int trunc,
                                  double eps_block, double deficit_ceiling) {
  EntanglementResult result;
  result.kind = ResultKind::UpperBound;
  if (point.r <= kDegenerateSqueezing) {
    result.bits = 0.0;
    result.diagnostics = {0.0, 0.0, 0.0, 0};
    return result;
  }

  const BlockDecomposition dec =
      block_decomposition(point, trunc, eps_block, deficit_ceiling);
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  double max_residual = 0.0;
  auto block_value = [&](const SymmetricMatrix& block) {
    const Spectrum spectrum = symmetric_eigenvalues(block, kEigenTolerance);
    min_eigenvalue = std::min(min_eigenvalue, spectrum.min());
    max_residual = std::max(max_residual, spectrum.residual);
    const double state_entropy =
        spectrum_entropy_bits(spectrum, block.trace(), kPsdTolerance, false);
    const double diagonal_entropy = shannon_entropy_bits(block.diagonal());
    return diagonal_entropy - state_entropy;
  };

  double total = dec.p0 * block_value(dec.block0);
  for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
    // the +k and -k branches carry the same coefficient matrix
    total += 2.0 * dec.weights[i] * block_value(dec.blocks[i]);
  }

  result.bits = total;
  result.diagnostics.trace_deficit = dec.trace_deficit;
  result.diagnostics.min_eigenvalue = min_eigenvalue;
  result.diagnostics.eigensolver_residual = max_residual;
  result.diagnostics.k_cutoff = dec.k_cutoff;
  return result;
}

double separability_border(double r, double nbar) {
  if (!(r >= 0.0) || !std::isfinite(r) || !(nbar >= 0.0) ||
      !std::isfinite(nbar)) {
    throw std::invalid_argument(
        "separability_border: r and nbar must be finite and nonnegative");
  }
  if (nbar == 0.0) {
    // zero-temperature damping never reaches the thermal criterion's border
    return std::numeric_limits<double>::infinity();
  }
  return std::log1p((1.0 - std::exp(-2.0 * r)) / (2.0 * nbar));
}

bool is_separable(const AmplitudePoint& point) {
  return point.d >= separability_border(point.r, point.nbar);
}

}  // namespace tmsv
