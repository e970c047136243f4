#include <cmath>

#include <doctest.h>

#include "tmsv/master_equation.hpp"
#include "tmsv/numerics.hpp"

using namespace tmsv;

namespace {

double max_abs(std::span<const double> a, std::span<const double> b) {
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dev = std::max(dev, std::abs(a[i] - b[i]));
  }
  return dev;
}

}  // namespace

TEST_CASE("projector construction") {
  const auto rho = tmsv_projector(0.5, 8);
  const double tail = std::pow(std::tanh(0.5), 2 * 9);
  CHECK(rho.trace() == doctest::Approx(1.0 - tail).epsilon(1e-12));
  // only |n,n><m,m| entries populated
  for (int n1 = 0; n1 <= 8; ++n1)
    for (int n2 = 0; n2 <= 8; ++n2)
      for (int m1 = 0; m1 <= 8; ++m1)
        for (int m2 = 0; m2 <= 8; ++m2) {
          if (n1 != n2 || m1 != m2) CHECK(rho(n1, n2, m1, m2) == 0.0);
        }
}

TEST_CASE("phase generator leaves populations untouched") {
  const auto rho = tmsv_projector(0.4, 6);
  const auto deriv = apply_phase_generator(rho, 1.0);
  for (int n1 = 0; n1 <= 6; ++n1)
    for (int n2 = 0; n2 <= 6; ++n2) CHECK(deriv(n1, n2, n1, n2) == 0.0);
}

TEST_CASE("phase generator rate on a single coherence") {
  TwoModeDensityMatrix rho(3);
  rho.at(1, 1, 0, 0) = 0.5;
  const auto deriv = apply_phase_generator(rho, 1.0);
  // (gamma/2) [(1-0)^2 + (1-0)^2] = 1
  CHECK(deriv(1, 1, 0, 0) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("vacuum is the fixed point of zero-temperature decay") {
  TwoModeDensityMatrix rho(4);
  rho.at(0, 0, 0, 0) = 1.0;
  const auto deriv = apply_amplitude_generator(rho, 1.0, 0.0);
  for (double v : deriv.data()) CHECK(v == 0.0);
}

TEST_CASE("single-photon decay rates") {
  TwoModeDensityMatrix rho(4);
  rho.at(1, 0, 1, 0) = 1.0;
  const auto deriv = apply_amplitude_generator(rho, 1.0, 0.0);
  CHECK(deriv(1, 0, 1, 0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(deriv(0, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("zero-time integration returns the projector bitwise") {
  const auto expected = tmsv_projector(0.45, 10);
  const auto result =
      integrate_rk4(DampingModel::Amplitude, 0.45, 0.0, 0.1, 10, 100);
  CHECK(result.steps == 0);
  CHECK(result.trace_drift == 0.0);
  CHECK(max_abs(result.state.data(), expected.data()) == 0.0);
}

TEST_CASE("dephasing preserves the populations bitwise") {
  const auto initial = tmsv_projector(0.5, 10);
  const auto result =
      integrate_rk4(DampingModel::Phase, 0.5, 0.4, 0.0, 10, 400);
  for (int n1 = 0; n1 <= 10; ++n1)
    for (int n2 = 0; n2 <= 10; ++n2)
      CHECK(result.state(n1, n2, n1, n2) == initial(n1, n2, n1, n2));
}

TEST_CASE("step halving changes nothing at fourth order") {
  const auto coarse =
      integrate_rk4(DampingModel::Amplitude, 0.3, 0.3, 0.1, 10, 300);
  const auto fine =
      integrate_rk4(DampingModel::Amplitude, 0.3, 0.3, 0.1, 10, 600);
  CHECK(max_abs(coarse.state.data(), fine.state.data()) < 1e-10);
}

TEST_CASE("trace, symmetry, and positivity hold at the final time") {
  for (auto [model, nbar] :
       {std::pair{DampingModel::Phase, 0.0},
        std::pair{DampingModel::Amplitude, 0.1}}) {
    const auto result = integrate_rk4(model, 0.3, 0.5, nbar, 10, 500);
    CHECK(result.trace_drift < 1e-8);

    const auto& rho = result.state;
    for (int n1 = 0; n1 <= 10; ++n1)
      for (int n2 = 0; n2 <= 10; ++n2)
        for (int m1 = 0; m1 <= 10; ++m1)
          for (int m2 = 0; m2 <= 10; ++m2) {
            // (n;m) <-> (m;n) symmetry of the real density matrix
            CHECK(std::abs(rho(n1, n2, m1, m2) - rho(m1, m2, n1, n2)) <=
                  1e-13);
            // mode-exchange symmetry of state and generators
            CHECK(std::abs(rho(n1, n2, m1, m2) - rho(n2, n1, m2, m1)) <=
                  1e-12);
          }

    const Spectrum spectrum = symmetric_eigenvalues(rho.flattened());
    CHECK(spectrum.min() >= -1e-9);
  }
}

TEST_CASE("preconditions are enforced") {
  // dt above 1e-3
  CHECK_THROWS_AS(integrate_rk4(DampingModel::Phase, 0.3, 1.0, 0.0, 6, 10),
                  std::invalid_argument);
  // amplitude model rejects a fat TMSV tail beyond the truncation
  CHECK_THROWS_AS(
      integrate_rk4(DampingModel::Amplitude, 0.5, 0.3, 0.0, 12, 300),
      std::invalid_argument);
  // the phase model has no tail gate: dephasing does not mix levels
  CHECK_NOTHROW(integrate_rk4(DampingModel::Phase, 0.5, 0.3, 0.0, 12, 300));
  CHECK_THROWS_AS(integrate_rk4(DampingModel::Phase, 0.3, -1.0, 0.0, 6, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(TwoModeDensityMatrix(0), std::invalid_argument);
}
