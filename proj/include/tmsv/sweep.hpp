#pragma once

// Parameter-grid sweeps, separability border tables, oracle verification, and
// CSV/JSON serialization. Sweeps distribute grid points over a worker pool;
// every record lands in a pre-sized slot, so output is deterministic for any
// worker count.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tmsv/entanglement.hpp"
#include "tmsv/errors.hpp"

namespace tmsv {

enum class SweepModel { Phase, Amplitude };
enum class OutputFormat { Csv, Json };

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  std::vector<double> points() const;
  void validate(const char* name) const;  // count >= 1, min <= max, finite
};

struct SweepConfig {
  SweepModel model = SweepModel::Phase;
  GridSpec r_grid{0.0, 1.5, 16};
  GridSpec d_grid{0.0, 2.0, 21};
  double nbar = 0.01;          // amplitude only
  int trunc = 100;
  double eps_block = 1e-12;    // amplitude block-weight cutoff
  double tail_ceiling = 1e-8;  // phase tail gate / amplitude deficit ceiling
  int workers = 1;

  void validate() const;
};

struct SweepRecord {
  double r = 0.0;
  double d = 0.0;
  std::optional<double> nbar;
  double value = 0.0;
  ResultKind kind = ResultKind::Exact;
  std::optional<bool> separable;
  Diagnostics diagnostics;
};

struct SweepTable {
  SweepConfig config;
  std::vector<SweepRecord> records;  // row-major: r outer, d inner
};

// Evaluates every grid point; any per-point failure aborts the sweep with the
// failing point named in the error (no partial results).
SweepTable run_sweep(const SweepConfig& config);

struct BorderTable {
  double nbar = 0.0;
  std::vector<std::pair<double, double>> rows;  // (r, d*)
};

// Throws std::invalid_argument for nbar == 0 (no finite border exists).
BorderTable emit_border(const GridSpec& r_grid, double nbar);

struct PureTable {
  std::vector<std::pair<double, double>> rows;  // (r, bits)
};

PureTable pure_table(const GridSpec& r_grid);

inline constexpr double kPhaseVerifyTolerance = 1e-8;
inline constexpr double kAmplitudeVerifyTolerance = 1e-6;

struct VerifyReport {
  SweepModel model = SweepModel::Phase;
  double r = 0.0;
  double d = 0.0;
  double nbar = 0.0;
  int oracle_trunc = 12;
  int steps = 0;
  double max_abs_deviation = 0.0;
  double trace_drift = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// Compares the analytic solution (restricted to the oracle truncation)
// against the RK4-integrated master equation, elementwise. steps == 0 picks
// the smallest step count with dt <= 1e-3. tolerance_override == 0 uses the
// per-model default.
VerifyReport run_verify(SweepModel model, double r, double d, double nbar,
                        int oracle_trunc = 12, int steps = 0,
                        double tolerance_override = 0.0);

// Serialization. Doubles are printed with 17 significant digits so that
// parsing an emitted file reproduces the values exactly.
std::string format_double(double v);
std::string to_csv(const SweepTable& table);
std::string to_json(const SweepTable& table);
std::vector<SweepRecord> parse_csv_records(const std::string& csv);
std::string to_csv(const BorderTable& table);
std::string to_json(const BorderTable& table);
std::string to_csv(const PureTable& table);
std::string to_json(const PureTable& table);
std::string to_text(const VerifyReport& report);
std::string to_json(const VerifyReport& report);

const char* to_string(SweepModel model) noexcept;

}  // namespace tmsv
