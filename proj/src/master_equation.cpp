#include "tmsv/master_equation.hpp"

#include <cmath>
#include <sstream>

namespace tmsv {

namespace {

constexpr double kMaxStepSize = 1e-3;
constexpr double kMaxTraceDrift = 1e-7;
constexpr double kMaxOracleTail = 1e-10;

std::vector<double> sqrt_table(int dim) {
  std::vector<double> s(static_cast<std::size_t>(dim) + 1);
  for (int n = 0; n <= dim; ++n) {
    s[static_cast<std::size_t>(n)] = std::sqrt(static_cast<double>(n));
  }
  return s;
}

}  // namespace

TwoModeDensityMatrix::TwoModeDensityMatrix(int trunc) : trunc_(trunc) {
  if (trunc < 1) {
    throw std::invalid_argument(
        "TwoModeDensityMatrix: truncation must be >= 1");
  }
  const std::size_t dim = static_cast<std::size_t>(trunc) + 1;
  data_.assign(dim * dim * dim * dim, 0.0);
}

double TwoModeDensityMatrix::trace() const noexcept {
  double t = 0.0;
  for (int n1 = 0; n1 <= trunc_; ++n1)
    for (int n2 = 0; n2 <= trunc_; ++n2) t += (*this)(n1, n2, n1, n2);
  return t;
}

SymmetricMatrix TwoModeDensityMatrix::flattened() const {
  const int dim = mode_dim();
  SymmetricMatrix flat(static_cast<std::size_t>(dim) * dim);
  for (int n1 = 0; n1 <= trunc_; ++n1)
    for (int n2 = 0; n2 <= trunc_; ++n2)
      for (int m1 = 0; m1 <= trunc_; ++m1)
        for (int m2 = 0; m2 <= trunc_; ++m2) {
          const std::size_t row = static_cast<std::size_t>(n1) * dim + n2;
          const std::size_t col = static_cast<std::size_t>(m1) * dim + m2;
          if (row <= col) flat.set(row, col, (*this)(n1, n2, m1, m2));
        }
  return flat;
}

TwoModeDensityMatrix tmsv_projector(double r, int trunc) {
  if (!(r >= 0.0) || !(r < 20.0)) {
    throw std::invalid_argument("tmsv_projector: r must satisfy 0 <= r < 20");
  }
  const LogWeight log_tanh = LogWeight::from_linear(std::tanh(r));
  const double log_cosh2 = 2.0 * std::log(std::cosh(r));
  TwoModeDensityMatrix rho(trunc);
  for (int n = 0; n <= trunc; ++n) {
    for (int m = 0; m <= trunc; ++m) {
      rho.at(n, n, m, m) =
          std::exp(log_pow(log_tanh, static_cast<long long>(n) + m).value -
                   log_cosh2);
    }
  }
  return rho;
}

TwoModeDensityMatrix apply_phase_generator(const TwoModeDensityMatrix& rho,
                                           double gamma) {
  const int trunc = rho.truncation();
  TwoModeDensityMatrix out(trunc);
  for (int n1 = 0; n1 <= trunc; ++n1)
    for (int n2 = 0; n2 <= trunc; ++n2)
      for (int m1 = 0; m1 <= trunc; ++m1)
        for (int m2 = 0; m2 <= trunc; ++m2) {
          const double g1 = static_cast<double>(n1 - m1);
          const double g2 = static_cast<double>(n2 - m2);
          out.at(n1, n2, m1, m2) =
              -0.5 * gamma * (g1 * g1 + g2 * g2) * rho(n1, n2, m1, m2);
        }
  return out;
}

TwoModeDensityMatrix apply_amplitude_generator(const TwoModeDensityMatrix& rho,
                                               double gamma, double nbar) {
  const int trunc = rho.truncation();
  TwoModeDensityMatrix out(trunc);
  const std::vector<double> sq = sqrt_table(trunc + 1);
  const double down = 0.5 * gamma * (1.0 + nbar);
  const double up = 0.5 * gamma * nbar;
  for (int n1 = 0; n1 <= trunc; ++n1)
    for (int n2 = 0; n2 <= trunc; ++n2)
      for (int m1 = 0; m1 <= trunc; ++m1)
        for (int m2 = 0; m2 <= trunc; ++m2) {
          const double x = rho(n1, n2, m1, m2);
          double acc = 0.0;
          // mode 1, loss channel: 2 a rho a+ - a+a rho - rho a+a
          if (n1 < trunc && m1 < trunc) {
            acc += 2.0 * down * sq[static_cast<std::size_t>(n1) + 1] *
                   sq[static_cast<std::size_t>(m1) + 1] *
                   rho(n1 + 1, n2, m1 + 1, m2);
          }
          acc -= down * static_cast<double>(n1 + m1) * x;
          // mode 1, gain channel: 2 a+ rho a - a a+ rho - rho a a+
          if (n1 > 0 && m1 > 0) {
            acc += 2.0 * up * sq[static_cast<std::size_t>(n1)] *
                   sq[static_cast<std::size_t>(m1)] *
                   rho(n1 - 1, n2, m1 - 1, m2);
          }
          acc -= up * static_cast<double>(n1 + m1 + 2) * x;
          // mode 2, loss channel
          if (n2 < trunc && m2 < trunc) {
            acc += 2.0 * down * sq[static_cast<std::size_t>(n2) + 1] *
                   sq[static_cast<std::size_t>(m2) + 1] *
                   rho(n1, n2 + 1, m1, m2 + 1);
          }
          acc -= down * static_cast<double>(n2 + m2) * x;
          // mode 2, gain channel
          if (n2 > 0 && m2 > 0) {
            acc += 2.0 * up * sq[static_cast<std::size_t>(n2)] *
                   sq[static_cast<std::size_t>(m2)] *
                   rho(n1, n2 - 1, m1, m2 - 1);
          }
          acc -= up * static_cast<double>(n2 + m2 + 2) * x;
          out.at(n1, n2, m1, m2) = acc;
        }
  return out;
}

IntegrationResult integrate_rk4(DampingModel model, double r, double d_target,
                                double nbar, int trunc, int steps) {
  if (!(d_target >= 0.0) || !std::isfinite(d_target)) {
    throw std::invalid_argument("integrate_rk4: d_target must be nonnegative");
  }
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw std::invalid_argument("integrate_rk4: nbar must be nonnegative");
  }

  TwoModeDensityMatrix rho = tmsv_projector(r, trunc);
  const double initial_trace = rho.trace();
  if (d_target == 0.0) {
    return {std::move(rho), 0.0, 0};
  }
  if (steps < 1) {
    throw std::invalid_argument("integrate_rk4: steps must be >= 1");
  }
  const double dt = d_target / static_cast<double>(steps);
  if (dt > kMaxStepSize * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "integrate_rk4: step size " << dt << " exceeds " << kMaxStepSize
        << "; use at least " << static_cast<int>(std::ceil(d_target / kMaxStepSize))
        << " steps";
    throw std::invalid_argument(msg.str());
  }
  if (model == DampingModel::Amplitude) {
    // Amplitude damping mixes levels, so the initial tail must be negligible.
    const double tail_mass =
        r == 0.0 ? 0.0 : std::exp(2.0 * (trunc + 1) * std::log(std::tanh(r)));
    if (tail_mass > kMaxOracleTail) {
      std::ostringstream msg;
      msg << "integrate_rk4: TMSV tail mass " << tail_mass
          << " beyond truncation " << trunc << " exceeds " << kMaxOracleTail
          << " for the amplitude model";
      throw std::invalid_argument(msg.str());
    }
  }

  const double gamma = 1.0;
  auto generator = [&](const TwoModeDensityMatrix& state) {
    return model == DampingModel::Phase
               ? apply_phase_generator(state, gamma)
               : apply_amplitude_generator(state, gamma, nbar);
  };
  auto axpy = [](TwoModeDensityMatrix& y, double a,
                 const TwoModeDensityMatrix& x) {
    auto yd = y.data();
    auto xd = x.data();
    for (std::size_t i = 0; i < yd.size(); ++i) yd[i] += a * xd[i];
  };

  TwoModeDensityMatrix stage(trunc);
  for (int step = 0; step < steps; ++step) {
    const TwoModeDensityMatrix k1 = generator(rho);
    stage = rho;
    axpy(stage, 0.5 * dt, k1);
    const TwoModeDensityMatrix k2 = generator(stage);
    stage = rho;
    axpy(stage, 0.5 * dt, k2);
    const TwoModeDensityMatrix k3 = generator(stage);
    stage = rho;
    axpy(stage, dt, k3);
    const TwoModeDensityMatrix k4 = generator(stage);
    axpy(rho, dt / 6.0, k1);
    axpy(rho, dt / 3.0, k2);
    axpy(rho, dt / 3.0, k3);
    axpy(rho, dt / 6.0, k4);
  }

  const double drift = std::abs(rho.trace() - initial_trace);
  if (drift > kMaxTraceDrift) {
    std::ostringstream msg;
    msg << "integrate_rk4: trace drift " << drift << " exceeds "
        << kMaxTraceDrift << " (truncation too small for these parameters)";
    throw TraceDriftError(msg.str(), drift);
  }
  return {std::move(rho), drift, steps};
}

}  // namespace tmsv
