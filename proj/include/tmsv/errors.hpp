#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tmsv {

// Base for numerical failures (truncation, convergence, positivity, trace
// drift). The CLI maps these to exit code 2; configuration problems throw
// std::invalid_argument instead and map to exit code 1.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested truncation cannot hold the state within the tail/deficit
// ceiling. Carries the smallest truncation estimated to be adequate.
class TruncationError : public NumericError {
 public:
  TruncationError(const std::string& what, int suggested_trunc)
      : NumericError(what), suggested_trunc_(suggested_trunc) {}
  int suggested_trunc() const noexcept { return suggested_trunc_; }

 private:
  int suggested_trunc_;
};

// Jacobi iteration exhausted its sweep budget before reaching the requested
// off-diagonal ratio.
class ConvergenceError : public NumericError {
 public:
  ConvergenceError(const std::string& what, double residual)
      : NumericError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// A probability-like input was more negative than the clamping tolerance.
class NegativityError : public NumericError {
 public:
  NegativityError(const std::string& what, std::size_t index, double value)
      : NumericError(what), index_(index), value_(value) {}
  std::size_t index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t index_;
  double value_;
};

// An eigenvalue fell below the positive-semidefiniteness tolerance.
class PsdError : public NumericError {
 public:
  PsdError(const std::string& what, double min_eigenvalue)
      : NumericError(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

// Master-equation integration drifted in trace beyond the allowed bound.
class TraceDriftError : public NumericError {
 public:
  TraceDriftError(const std::string& what, double drift)
      : NumericError(what), drift_(drift) {}
  double drift() const noexcept { return drift_; }

 private:
  double drift_;
};

}  // namespace tmsv
