#pragma once

// Independent verification path: fixed-step RK4 integration of the two-mode
// Lindblad master equation (pure dephasing or thermal amplitude damping) in a
// small truncated Fock space. Deliberately direct and reproducible; the
// analytic modules are the production path.

#include <span>
#include <vector>

#include "tmsv/errors.hpp"
#include "tmsv/numerics.hpp"

namespace tmsv {

enum class DampingModel { Phase, Amplitude };

// Real two-mode density matrix indexed as (n1, n2; m1, m2), per-mode levels
// 0..trunc. Both generators preserve realness and (n;m) <-> (m;n) symmetry of
// the initial state, so complex storage is unnecessary.
class TwoModeDensityMatrix {
 public:
  explicit TwoModeDensityMatrix(int trunc);

  int truncation() const noexcept { return trunc_; }
  int mode_dim() const noexcept { return trunc_ + 1; }

  double operator()(int n1, int n2, int m1, int m2) const noexcept {
    return data_[index(n1, n2, m1, m2)];
  }
  double& at(int n1, int n2, int m1, int m2) noexcept {
    return data_[index(n1, n2, m1, m2)];
  }

  double trace() const noexcept;
  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  // Flattens to the (M+1)^2-dimensional matrix over pair indices
  // I = n1 (M+1) + n2; used for PSD checks.
  SymmetricMatrix flattened() const;

 private:
  std::size_t index(int n1, int n2, int m1, int m2) const noexcept {
    const std::size_t dim = static_cast<std::size_t>(trunc_) + 1;
    return ((static_cast<std::size_t>(n1) * dim + static_cast<std::size_t>(n2)) *
                dim +
            static_cast<std::size_t>(m1)) *
               dim +
           static_cast<std::size_t>(m2);
  }

  int trunc_;
  std::vector<double> data_;
};

// Truncated two-mode squeezed vacuum projector. Entries are evaluated through
// the same log-domain expression as the analytic phase matrix, so the two
// agree bit-for-bit at d = 0.
TwoModeDensityMatrix tmsv_projector(double r, int trunc);

// Pure dephasing: d/dt rho(n1,n2;m1,m2) =
//   -(gamma/2) [(n1-m1)^2 + (n2-m2)^2] rho(n1,n2;m1,m2).
TwoModeDensityMatrix apply_phase_generator(const TwoModeDensityMatrix& rho,
                                           double gamma);

// Thermal amplitude damping via ladder-operator index shifts; population
// raised past the truncation is dropped and shows up as trace drift.
TwoModeDensityMatrix apply_amplitude_generator(const TwoModeDensityMatrix& rho,
                                               double gamma, double nbar);

struct IntegrationResult {
  TwoModeDensityMatrix state;
  double trace_drift = 0.0;
  int steps = 0;
};

// Classical fixed-step RK4 from the truncated TMSV projector to t = d_target
// (gamma = 1, so t and d coincide). Requires dt <= 1e-3; the amplitude model
// additionally requires the TMSV tail beyond the truncation to be below
// 1e-10 (dephasing does not mix levels, so no tail gate applies there).
// Throws TraceDriftError if the trace moves by more than 1e-7.
IntegrationResult integrate_rk4(DampingModel model, double r, double d_target,
                                double nbar, int trunc, int steps);

}  // namespace tmsv
