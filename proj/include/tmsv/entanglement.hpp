#pragma once

// Result type shared by the phase and amplitude channels.

namespace tmsv {

enum class ResultKind {
  Exact,      // closed-form relative entropy of entanglement
  UpperBound  // convexity bound; honest label for downstream consumers
};

inline const char* to_string(ResultKind kind) noexcept {
  return kind == ResultKind::Exact ? "exact" : "upper-bound";
}

struct Diagnostics {
  double trace_deficit = 0.0;
  double min_eigenvalue = 0.0;
  double eigensolver_residual = 0.0;
  int k_cutoff = -1;  // -1 when no block decomposition was involved
};

struct EntanglementResult {
  double bits = 0.0;
  ResultKind kind = ResultKind::Exact;
  Diagnostics diagnostics;
};

}  // namespace tmsv
