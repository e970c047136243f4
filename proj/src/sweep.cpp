#include "tmsv/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "tmsv/amplitude_damping.hpp"
#include "tmsv/master_equation.hpp"
#include "tmsv/phase_damping.hpp"
#include "tmsv/squeezed_state.hpp"

namespace tmsv {

namespace {

using nlohmann::json;

SweepRecord evaluate_point(const SweepConfig& cfg, double r, double d) {
  SweepRecord rec;
  rec.r = r;
  rec.d = d;
  if (cfg.model == SweepModel::Phase) {
    const PhaseDampedMatrix m =
        build_phase_matrix(PhasePoint(r, d), cfg.trunc, cfg.tail_ceiling);
    const EntanglementResult res = relative_entropy_exact(m);
    rec.value = res.bits;
    rec.kind = res.kind;
    rec.diagnostics = res.diagnostics;
  } else {
    const AmplitudePoint point(r, d, cfg.nbar);
    // tail_ceiling plays the deficit-ceiling role for the decomposition
    const EntanglementResult res =
        upper_bound_er(point, cfg.trunc, cfg.eps_block, cfg.tail_ceiling);
    rec.nbar = cfg.nbar;
    rec.value = res.bits;
    rec.kind = res.kind;
    rec.separable = is_separable(point);
    rec.diagnostics = res.diagnostics;
  }
  return rec;
}

std::string csv_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

json json_config(const SweepConfig& cfg) {
  // Worker count and output destination are execution details; leaving them
  // out keeps files from runs with different worker counts byte-identical.
  json j{{"model", to_string(cfg.model)},
         {"r_grid",
          {{"min", cfg.r_grid.min},
           {"max", cfg.r_grid.max},
           {"count", cfg.r_grid.count}}},
         {"d_grid",
          {{"min", cfg.d_grid.min},
           {"max", cfg.d_grid.max},
           {"count", cfg.d_grid.count}}},
         {"trunc", cfg.trunc},
         {"tail_ceiling", cfg.tail_ceiling}};
  if (cfg.model == SweepModel::Amplitude) {
    j["nbar"] = cfg.nbar;
    j["eps_block"] = cfg.eps_block;
  }
  return j;
}

}  // namespace

const char* to_string(SweepModel model) noexcept {
  return model == SweepModel::Phase ? "phase" : "amplitude";
}

std::vector<double> GridSpec::points() const {
  std::vector<double> pts(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    pts[static_cast<std::size_t>(i)] =
        count == 1 ? min
                   : min + (max - min) * static_cast<double>(i) /
                               static_cast<double>(count - 1);
  }
  return pts;
}

void GridSpec::validate(const char* name) const {
  if (count < 1 || !(min <= max) || !std::isfinite(min) ||
      !std::isfinite(max)) {
    std::ostringstream msg;
    msg << name << ": need count >= 1 and finite min <= max, got min=" << min
        << " max=" << max << " count=" << count;
    throw std::invalid_argument(msg.str());
  }
}

void SweepConfig::validate() const {
  r_grid.validate("r_grid");
  d_grid.validate("d_grid");
  if (trunc < 1) throw std::invalid_argument("config: trunc must be >= 1");
  if (!(eps_block > 0.0)) {
    throw std::invalid_argument("config: eps_block must be positive");
  }
  if (!(tail_ceiling > 0.0)) {
    throw std::invalid_argument("config: tail_ceiling must be positive");
  }
  if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
  if (model == SweepModel::Amplitude &&
      (!(nbar >= 0.0) || !std::isfinite(nbar))) {
    throw std::invalid_argument("config: nbar must be finite and >= 0");
  }
}

SweepTable run_sweep(const SweepConfig& config) {
  config.validate();
  const std::vector<double> rs = config.r_grid.points();
  const std::vector<double> ds = config.d_grid.points();
  const std::size_t total = rs.size() * ds.size();

  std::vector<SweepRecord> records(total);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex failure_mutex;
  std::string failure_message;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= total || failed.load(std::memory_order_relaxed)) return;
      const double r = rs[i / ds.size()];
      const double d = ds[i % ds.size()];
      try {
        records[i] = evaluate_point(config, r, d);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failed.exchange(true)) {
          std::ostringstream msg;
          msg << "sweep failed at point r=" << r << " d=" << d << ": "
              << e.what();
          failure_message = msg.str();
        }
        return;
      }
    }
  };

  const int workers = config.workers;
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw NumericError(failure_message);

  return {config, std::move(records)};
}

BorderTable emit_border(const GridSpec& r_grid, double nbar) {
  r_grid.validate("r_grid");
  if (!(nbar > 0.0) || !std::isfinite(nbar)) {
    throw std::invalid_argument(
        "emit_border: no finite separability border exists for nbar == 0; "
        "require nbar > 0");
  }
  BorderTable table;
  table.nbar = nbar;
  for (double r : r_grid.points()) {
    table.rows.emplace_back(r, separability_border(r, nbar));
  }
  return table;
}

PureTable pure_table(const GridSpec& r_grid) {
  r_grid.validate("r_grid");
  PureTable table;
  for (double r : r_grid.points()) {
    table.rows.emplace_back(r, pure_entanglement_bits(SqueezeParams(r)));
  }
  return table;
}

VerifyReport run_verify(SweepModel model, double r, double d, double nbar,
                        int oracle_trunc, int steps,
                        double tolerance_override) {
  if (oracle_trunc < 1) {
    throw std::invalid_argument("run_verify: oracle truncation must be >= 1");
  }
  if (steps == 0 && d > 0.0) {
    steps = static_cast<int>(std::ceil(d / 1e-3));
  }

  VerifyReport report;
  report.model = model;
  report.r = r;
  report.d = d;
  report.nbar = nbar;
  report.oracle_trunc = oracle_trunc;
  report.tolerance = tolerance_override > 0.0
                         ? tolerance_override
                         : (model == SweepModel::Phase
                                ? kPhaseVerifyTolerance
                                : kAmplitudeVerifyTolerance);

  // Analytic solution restricted to the oracle truncation. The tail gate is
  // disabled: this is a restriction for elementwise comparison, not a
  // normalized state.
  TwoModeDensityMatrix analytic(oracle_trunc);
  if (model == SweepModel::Phase) {
    const PhaseDampedMatrix m =
        build_phase_matrix(PhasePoint(r, d), oracle_trunc,
                           std::numeric_limits<double>::infinity());
    for (int n = 0; n <= oracle_trunc; ++n)
      for (int m2 = 0; m2 <= oracle_trunc; ++m2)
        analytic.at(n, n, m2, m2) = m.matrix(static_cast<std::size_t>(n),
                                             static_cast<std::size_t>(m2));
  } else {
    const auto cp = channel_params(AmplitudePoint(r, d, nbar));
    if (!cp) {
      throw std::invalid_argument(
          "run_verify: degenerate squeezing; nothing to verify");
    }
    std::vector<SymmetricMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(oracle_trunc) + 1);
    for (int k = 0; k <= oracle_trunc; ++k) {
      blocks.push_back(raw_block_matrix(k, *cp, r, oracle_trunc));
    }
    for (int a = 0; a <= oracle_trunc; ++a)
      for (int b = 0; b <= oracle_trunc; ++b)
        for (int c = 0; c <= oracle_trunc; ++c)
          for (int e = 0; e <= oracle_trunc; ++e) {
            const int k = b - a;
            if (e - c != k) continue;
            const double value =
                k >= 0 ? blocks[static_cast<std::size_t>(k)](
                             static_cast<std::size_t>(a),
                             static_cast<std::size_t>(c))
                       : blocks[static_cast<std::size_t>(-k)](
                             static_cast<std::size_t>(b),
                             static_cast<std::size_t>(e));
            analytic.at(a, b, c, e) = value;
          }
  }

  const IntegrationResult oracle = integrate_rk4(
      model == SweepModel::Phase ? DampingModel::Phase
                                 : DampingModel::Amplitude,
      r, d, nbar, oracle_trunc, steps);
  report.steps = oracle.steps;
  report.trace_drift = oracle.trace_drift;

  double max_dev = 0.0;
  const auto lhs = oracle.state.data();
  const auto rhs = analytic.data();
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    max_dev = std::max(max_dev, std::abs(lhs[i] - rhs[i]));
  }
  report.max_abs_deviation = max_dev;
  report.passed = max_dev < report.tolerance;
  return report;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const SweepTable& table) {
  std::string out =
      "r,d,nbar,value,kind,separable,trace_deficit,min_eig,k_cutoff\n";
  for (const SweepRecord& rec : table.records) {
    out += format_double(rec.r);
    out += ',';
    out += format_double(rec.d);
    out += ',';
    out += csv_optional(rec.nbar);
    out += ',';
    out += format_double(rec.value);
    out += ',';
    out += to_string(rec.kind);
    out += ',';
    if (rec.separable) out += *rec.separable ? "true" : "false";
    out += ',';
    out += format_double(rec.diagnostics.trace_deficit);
    out += ',';
    out += format_double(rec.diagnostics.min_eigenvalue);
    out += ',';
    if (rec.diagnostics.k_cutoff >= 0) {
      out += std::to_string(rec.diagnostics.k_cutoff);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const SweepTable& table) {
  json j;
  j["config"] = json_config(table.config);
  json records = json::array();
  for (const SweepRecord& rec : table.records) {
    json jr{{"r", rec.r},
            {"d", rec.d},
            {"value", rec.value},
            {"kind", to_string(rec.kind)},
            {"trace_deficit", rec.diagnostics.trace_deficit},
            {"min_eig", rec.diagnostics.min_eigenvalue}};
    jr["nbar"] = rec.nbar ? json(*rec.nbar) : json();
    jr["separable"] = rec.separable ? json(*rec.separable) : json();
    jr["k_cutoff"] = rec.diagnostics.k_cutoff >= 0
                         ? json(rec.diagnostics.k_cutoff)
                         : json();
    records.push_back(std::move(jr));
  }
  j["records"] = std::move(records);
  return j.dump(2) + "\n";
}

std::vector<SweepRecord> parse_csv_records(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("parse_csv_records: empty input");
  }
  if (line != "r,d,nbar,value,kind,separable,trace_deficit,min_eig,k_cutoff") {
    throw std::invalid_argument("parse_csv_records: unexpected header: " +
                                line);
  }
  std::vector<SweepRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    // a trailing empty field (e.g. empty k_cutoff) is dropped by getline
    while (fields.size() < 9) fields.emplace_back();
    if (fields.size() != 9) {
      throw std::invalid_argument("parse_csv_records: bad row: " + line);
    }
    SweepRecord rec;
    rec.r = std::stod(fields[0]);
    rec.d = std::stod(fields[1]);
    if (!fields[2].empty()) rec.nbar = std::stod(fields[2]);
    rec.value = std::stod(fields[3]);
    if (fields[4] == "exact") {
      rec.kind = ResultKind::Exact;
    } else if (fields[4] == "upper-bound") {
      rec.kind = ResultKind::UpperBound;
    } else {
      throw std::invalid_argument("parse_csv_records: bad kind: " + fields[4]);
    }
    if (!fields[5].empty()) rec.separable = fields[5] == "true";
    rec.diagnostics.trace_deficit = std::stod(fields[6]);
    rec.diagnostics.min_eigenvalue = std::stod(fields[7]);
    rec.diagnostics.k_cutoff =
        fields[8].empty() ? -1 : std::stoi(fields[8]);
    records.push_back(rec);
  }
  return records;
}

std::string to_csv(const BorderTable& table) {
  std::string out = "r,d_star\n";
  for (const auto& [r, d_star] : table.rows) {
    out += format_double(r);
    out += ',';
    out += format_double(d_star);
    out += '\n';
  }
  return out;
}

std::string to_json(const BorderTable& table) {
  json j{{"nbar", table.nbar}};
  json rows = json::array();
  for (const auto& [r, d_star] : table.rows) {
    rows.push_back(json{{"r", r}, {"d_star", d_star}});
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string to_csv(const PureTable& table) {
  std::string out = "r,value\n";
  for (const auto& [r, bits] : table.rows) {
    out += format_double(r);
    out += ',';
    out += format_double(bits);
    out += '\n';
  }
  return out;
}

std::string to_json(const PureTable& table) {
  json rows = json::array();
  for (const auto& [r, bits] : table.rows) {
    rows.push_back(json{{"r", r}, {"value", bits}});
  }
  json j{{"rows", std::move(rows)}};
  return j.dump(2) + "\n";
}

std::string to_text(const VerifyReport& report) {
  std::ostringstream out;
  out << "model: " << to_string(report.model) << '\n'
      << "r: " << format_double(report.r) << "  d: " << format_double(report.d)
      << "  nbar: " << format_double(report.nbar) << '\n'
      << "oracle truncation: " << report.oracle_trunc
      << "  steps: " << report.steps << '\n'
      << "max abs deviation: " << format_double(report.max_abs_deviation)
      << "  tolerance: " << format_double(report.tolerance) << '\n'
      << "trace drift: " << format_double(report.trace_drift) << '\n'
      << "status: " << (report.passed ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string to_json(const VerifyReport& report) {
  json j{{"model", to_string(report.model)},
         {"r", report.r},
         {"d", report.d},
         {"nbar", report.nbar},
         {"oracle_trunc", report.oracle_trunc},
         {"steps", report.steps},
         {"max_abs_deviation", report.max_abs_deviation},
         {"trace_drift", report.trace_drift},
         {"tolerance", report.tolerance},
         {"passed", report.passed}};
  return j.dump(2) + "\n";
}

}  // namespace tmsv
