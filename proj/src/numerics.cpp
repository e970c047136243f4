#include "tmsv/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tmsv {

namespace {

constexpr double kNegativeClamp = 1e-12;
constexpr double kNormalizationWindow = 1e-8;
constexpr int kLogFactorialTableSize = 4096;

}  // namespace

LogWeight LogWeight::from_linear(double x) {
  if (!(x >= 0.0)) {
    throw std::invalid_argument("LogWeight::from_linear: value must be nonnegative");
  }
  if (x == 0.0) return zero();
  return {std::log(x)};
}

double LogWeight::linear() const noexcept { return std::exp(value); }

LogWeight log_pow(LogWeight base, long long n) noexcept {
  if (n == 0) return {0.0};
  return {static_cast<double>(n) * base.value};
}

double log_factorial(int n) {
  if (n < 0) {
    throw std::invalid_argument("log_factorial: n must be nonnegative");
  }
  static const std::vector<double> table = [] {
    std::vector<double> t(kLogFactorialTableSize + 1);
    long double acc = 0.0L;
    t[0] = 0.0;
    for (int k = 1; k <= kLogFactorialTableSize; ++k) {
      acc += std::log(static_cast<long double>(k));
      t[k] = static_cast<double>(acc);
    }
    return t;
  }();
  if (n > kLogFactorialTableSize) {
    throw std::out_of_range("log_factorial: index exceeds table size " +
                            std::to_string(kLogFactorialTableSize));
  }
  return table[static_cast<std::size_t>(n)];
}

double log_sum_exp(std::span<const double> terms) {
  if (terms.empty()) {
    throw std::invalid_argument("log_sum_exp: terms must be nonempty");
  }
  const double peak = *std::max_element(terms.begin(), terms.end());
  if (peak == -std::numeric_limits<double>::infinity()) {
    return peak;  // every term encodes exact zero
  }
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return peak + std::log(sum);
}

SymmetricMatrix::SymmetricMatrix(std::size_t dim)
    : dim_(dim), data_(dim * dim, 0.0) {
  if (dim == 0) {
    throw std::invalid_argument("SymmetricMatrix: dimension must be positive");
  }
}

void SymmetricMatrix::set(std::size_t i, std::size_t j, double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("SymmetricMatrix::set: entry must be finite");
  }
  data_[i * dim_ + j] = value;
  data_[j * dim_ + i] = value;
}

double SymmetricMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += data_[i * dim_ + i];
  return t;
}

double SymmetricMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

std::vector<double> SymmetricMatrix::diagonal() const {
  std::vector<double> d(dim_);
  for (std::size_t i = 0; i < dim_; ++i) d[i] = data_[i * dim_ + i];
  return d;
}

void SymmetricMatrix::scale(double factor) noexcept {
  for (double& v : data_) v *= factor;
}

double Spectrum::sum() const noexcept {
  double s = 0.0;
  for (double v : eigenvalues) s += v;
  return s;
}

double Spectrum::min() const noexcept {
  if (eigenvalues.empty()) return 0.0;
  return eigenvalues.back();  // stored descending
}

Spectrum symmetric_eigenvalues(const SymmetricMatrix& m, double tol,
                               int max_sweeps) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("symmetric_eigenvalues: tol must be positive");
  }
  const std::size_t n = m.dim();
  std::vector<double> a(m.data().begin(), m.data().end());
  auto at = [&](std::size_t i, std::size_t j) -> double& {
    return a[i * n + j];
  };

  const double frob = m.frobenius_norm();
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += at(i, j) * at(i, j);
    return std::sqrt(2.0 * s);
  };
  auto finish = [&](double off) {
    Spectrum sp;
    sp.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) sp.eigenvalues[i] = at(i, i);
    std::sort(sp.eigenvalues.begin(), sp.eigenvalues.end(),
              std::greater<double>());
    sp.residual = frob > 0.0 ? off / frob : 0.0;
    return sp;
  };

  if (n < 2 || frob == 0.0) return finish(0.0);

  double off = off_norm();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off <= tol * frob) return finish(off);
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        // Elements that no longer perturb the diagonal at double precision
        // are flushed to zero instead of rotated.
        const double g = 100.0 * std::abs(apq);
        if (std::abs(at(p, p)) + g == std::abs(at(p, p)) &&
            std::abs(at(q, q)) + g == std::abs(at(q, q))) {
          at(p, q) = at(q, p) = 0.0;
          continue;
        }
        const double theta = 0.5 * (at(q, q) - at(p, p)) / apq;
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;  // asymptotic form; theta^2 would overflow
        } else {
          t = std::copysign(1.0, theta) /
              (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double delta = t * apq;
        at(p, p) -= delta;
        at(q, q) += delta;
        at(p, q) = at(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = at(r, p);
          const double arq = at(r, q);
          at(r, p) = at(p, r) = arp - s * (arq + tau * arp);
          at(r, q) = at(q, r) = arq + s * (arp - tau * arq);
        }
      }
    }
    off = off_norm();
  }
  if (off <= tol * frob) return finish(off);

  const double residual = frob > 0.0 ? off / frob : 0.0;
  std::ostringstream msg;
  msg << "symmetric_eigenvalues: no convergence after " << max_sweeps
      << " sweeps (residual " << residual << ", tol " << tol << ")";
  throw ConvergenceError(msg.str(), residual);
}

double shannon_entropy_bits(std::span<const double> p,
                            bool check_normalization) {
  double sum = 0.0;
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double v = p[i];
    if (v < -kNegativeClamp) {
      std::ostringstream msg;
      msg << "shannon_entropy_bits: negative probability " << v << " at index "
          << i;
      throw NegativityError(msg.str(), i, v);
    }
    if (v <= 0.0) continue;  // exact zero or clamped
    sum += v;
    h -= v * std::log2(v);
  }
  if (check_normalization && std::abs(sum - 1.0) > kNormalizationWindow) {
    std::ostringstream msg;
    msg << "shannon_entropy_bits: probabilities sum to " << sum
        << ", not 1 within " << kNormalizationWindow;
    throw std::invalid_argument(msg.str());
  }
  return h;
}

double spectrum_entropy_bits(const Spectrum& spectrum, double trace,
                             double tol_eig, bool normalize) {
  if (!(trace > 0.0)) {
    throw std::invalid_argument("spectrum_entropy_bits: trace must be positive");
  }
  const double floor = -tol_eig * trace;
  double h = 0.0;
  for (double lambda : spectrum.eigenvalues) {
    if (lambda < floor) {
      std::ostringstream msg;
      msg << "spectrum_entropy_bits: eigenvalue " << lambda
          << " violates PSD tolerance " << floor;
      throw PsdError(msg.str(), lambda);
    }
    double v = lambda <= 0.0 ? 0.0 : lambda;
    if (normalize) v /= trace;
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

double von_neumann_entropy_bits(const SymmetricMatrix& m, double tol_eig,
                                bool normalize) {
  const Spectrum sp = symmetric_eigenvalues(m);
  return spectrum_entropy_bits(sp, m.trace(), tol_eig, normalize);
}

}  // namespace tmsv
