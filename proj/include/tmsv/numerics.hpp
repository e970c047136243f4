#pragma once

// Shared numerical primitives: log-domain scalars, dense symmetric matrices,
// a cyclic-Jacobi eigensolver, and the two entropy functions everything else
// is built from. All functions here are pure and safe to call concurrently.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "tmsv/errors.hpp"

namespace tmsv {

// Natural-log representation of a nonnegative quantity. -inf encodes exact
// zero, so products of huge factorials and tiny geometric factors never
// overflow or underflow until the final exponentiation.
struct LogWeight {
  double value = -std::numeric_limits<double>::infinity();

  static constexpr LogWeight zero() noexcept {
    return {-std::numeric_limits<double>::infinity()};
  }
  static LogWeight from_linear(double x);  // requires x >= 0
  double linear() const noexcept;
  bool is_zero() const noexcept {
    return value == -std::numeric_limits<double>::infinity();
  }
};

// base^n in log scale with the 0^0 = 1 convention (n == 0 always yields one,
// even for a zero base).
LogWeight log_pow(LogWeight base, long long n) noexcept;

// ln(n!) from a table accumulated once in extended precision. Exact-table
// accuracy, no asymptotic series; covers every index a truncated two-mode
// matrix can request.
double log_factorial(int n);

// ln(sum_i exp(terms[i])) with the maximum factored out first. Terms may be
// -inf; the result is -inf iff every term is.
double log_sum_exp(std::span<const double> terms);

// Dense real symmetric matrix. set() writes both triangles so the storage is
// exactly symmetric; entries are validated finite.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * dim_ + j];
  }
  void set(std::size_t i, std::size_t j, double value);

  double trace() const noexcept;
  double frobenius_norm() const noexcept;
  std::vector<double> diagonal() const;
  void scale(double factor) noexcept;
  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

struct Spectrum {
  std::vector<double> eigenvalues;  // descending
  double residual = 0.0;            // final off-diagonal / total Frobenius ratio

  double sum() const noexcept;
  double min() const noexcept;
};

// Cyclic Jacobi diagonalization. Sweeps rotate every (p,q) pair; iteration
// stops once the off-diagonal Frobenius norm drops below tol * ||m||_F.
// Throws ConvergenceError (carrying the residual) after max_sweeps.
Spectrum symmetric_eigenvalues(const SymmetricMatrix& m, double tol = 1e-12,
                               int max_sweeps = 100);

// -sum p log2 p with the 0 log 0 = 0 convention. Values in [-1e-12, 0) are
// clamped to zero; anything more negative throws NegativityError. Unless the
// caller opts out, sum(p) must be within 1e-8 of one.
double shannon_entropy_bits(std::span<const double> p,
                            bool check_normalization = true);

// Entropy of an already-computed spectrum: clamps eigenvalues in
// [-tol_eig * trace, 0) to zero, throws PsdError below that, optionally
// normalizes by the trace.
double spectrum_entropy_bits(const Spectrum& spectrum, double trace,
                             double tol_eig, bool normalize);

// von Neumann entropy in bits of an approximately-PSD symmetric matrix.
double von_neumann_entropy_bits(const SymmetricMatrix& m,
                                double tol_eig = 1e-10,
                                bool normalize = false);

}  // namespace tmsv
