// Command-line front end: `pure`, `phase`, `amplitude`, `border`, and
// `verify` subcommands over the decoherence library. Exit codes: 0 success,
// 1 usage/config error, 2 numerical failure, 3 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tmsv/errors.hpp"
#include "tmsv/sweep.hpp"

namespace {

using namespace tmsv;

void write_output(const std::string& payload, const std::string& path) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot open output file: " + path);
  }
  out << payload;
}

struct GridFlags {
  double r_min = 0.0, r_max = 1.5;
  int r_steps = 16;
  double d_min = 0.0, d_max = 2.0;
  int d_steps = 21;
};

void add_r_grid(CLI::App* cmd, GridFlags& g) {
  cmd->add_option("--r-min", g.r_min, "Smallest squeezing parameter r")
      ->capture_default_str();
  cmd->add_option("--r-max", g.r_max, "Largest squeezing parameter r")
      ->capture_default_str();
  cmd->add_option("--r-steps", g.r_steps, "Number of r grid points")
      ->capture_default_str();
}

void add_d_grid(CLI::App* cmd, GridFlags& g) {
  cmd->add_option("--d-min", g.d_min, "Smallest damping d = gamma*t")
      ->capture_default_str();
  cmd->add_option("--d-max", g.d_max, "Largest damping d = gamma*t")
      ->capture_default_str();
  cmd->add_option("--d-steps", g.d_steps, "Number of d grid points")
      ->capture_default_str();
}

OutputFormat parse_format(const std::string& format) {
  return format == "json" ? OutputFormat::Json : OutputFormat::Csv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Decoherence of two-mode squeezed vacuum states: exact relative "
      "entropy of entanglement under phase damping and a convexity upper "
      "bound under thermal amplitude damping."};
  app.require_subcommand(1);

  GridFlags pure_grid, phase_grid, amp_grid, border_grid;
  std::string format = "csv";
  std::string output;
  int trunc = 100;
  double eps_block = 1e-12;
  double tail_ceiling = 1e-8;
  double nbar = 0.01;
  int workers = 1;

  auto* pure = app.add_subcommand(
      "pure", "Entanglement entropy of the undamped state over an r grid");
  add_r_grid(pure, pure_grid);

  auto* phase = app.add_subcommand(
      "phase", "Exact relative-entropy-of-entanglement sweep, phase damping");
  add_r_grid(phase, phase_grid);
  add_d_grid(phase, phase_grid);
  phase->add_option("--trunc", trunc, "Fock-space truncation N")
      ->capture_default_str();
  phase
      ->add_option("--tail-ceiling", tail_ceiling,
                   "Largest tolerated truncation tail mass")
      ->capture_default_str();
  phase->add_option("--workers", workers, "Worker threads for the sweep")
      ->capture_default_str();

  auto* amplitude = app.add_subcommand(
      "amplitude",
      "Upper-bound sweep with separability flags, thermal amplitude damping");
  amp_grid.d_max = 1.2;
  amp_grid.d_steps = 13;
  add_r_grid(amplitude, amp_grid);
  add_d_grid(amplitude, amp_grid);
  amplitude->add_option("--nbar", nbar, "Thermal mean photon number")
      ->capture_default_str();
  amplitude->add_option("--trunc", trunc, "Fock-space truncation N")
      ->capture_default_str();
  amplitude
      ->add_option("--eps-block", eps_block,
                   "Raw block weight below which the k sum stops")
      ->capture_default_str();
  amplitude
      ->add_option("--tail-ceiling", tail_ceiling,
                   "Largest tolerated decomposition trace deficit")
      ->capture_default_str();
  amplitude->add_option("--workers", workers, "Worker threads for the sweep")
      ->capture_default_str();

  auto* border = app.add_subcommand(
      "border", "Separability border d*(r) of the thermal amplitude channel");
  add_r_grid(border, border_grid);
  border->add_option("--nbar", nbar, "Thermal mean photon number (> 0)")
      ->capture_default_str();

  auto* verify = app.add_subcommand(
      "verify",
      "Compare the analytic solution against an RK4 master-equation oracle");
  std::string verify_model;
  double verify_r = 0.5, verify_d = 0.3, verify_nbar = 0.0;
  int oracle_trunc = 12, oracle_steps = 0;
  double verify_tolerance = 0.0;
  verify->add_option("model", verify_model, "Damping model")
      ->required()
      ->check(CLI::IsMember({"phase", "amplitude"}));
  verify->add_option("--r", verify_r, "Squeezing parameter")
      ->capture_default_str();
  verify->add_option("--d", verify_d, "Damping d = gamma*t")
      ->capture_default_str();
  verify->add_option("--nbar", verify_nbar, "Thermal mean photon number")
      ->capture_default_str();
  verify
      ->add_option("--oracle-trunc", oracle_trunc,
                   "Per-mode truncation of the oracle Fock space")
      ->capture_default_str();
  verify
      ->add_option("--oracle-steps", oracle_steps,
                   "RK4 steps (0 = smallest count with dt <= 1e-3)")
      ->capture_default_str();
  verify
      ->add_option("--tolerance", verify_tolerance,
                   "Deviation tolerance (0 = per-model default)")
      ->capture_default_str();

  for (CLI::App* cmd : {pure, phase, amplitude, border}) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output", output, "Output path (default: stdout)");
  }
  verify->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  verify->add_option("--output", output, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*pure) {
      const PureTable table =
          pure_table({pure_grid.r_min, pure_grid.r_max, pure_grid.r_steps});
      write_output(parse_format(format) == OutputFormat::Json ? to_json(table)
                                                              : to_csv(table),
                   output);
      return 0;
    }
    if (*phase || *amplitude) {
      const GridFlags& g = *phase ? phase_grid : amp_grid;
      SweepConfig cfg;
      cfg.model = *phase ? SweepModel::Phase : SweepModel::Amplitude;
      cfg.r_grid = {g.r_min, g.r_max, g.r_steps};
      cfg.d_grid = {g.d_min, g.d_max, g.d_steps};
      cfg.nbar = nbar;
      cfg.trunc = trunc;
      cfg.eps_block = eps_block;
      cfg.tail_ceiling = tail_ceiling;
      cfg.workers = workers;
      const SweepTable table = run_sweep(cfg);
      write_output(parse_format(format) == OutputFormat::Json ? to_json(table)
                                                              : to_csv(table),
                   output);
      return 0;
    }
    if (*border) {
      const BorderTable table = emit_border(
          {border_grid.r_min, border_grid.r_max, border_grid.r_steps}, nbar);
      write_output(parse_format(format) == OutputFormat::Json ? to_json(table)
                                                              : to_csv(table),
                   output);
      return 0;
    }
    if (*verify) {
      const VerifyReport report = run_verify(
          verify_model == "phase" ? SweepModel::Phase : SweepModel::Amplitude,
          verify_r, verify_d, verify_nbar, oracle_trunc, oracle_steps,
          verify_tolerance);
      write_output(format == "json" ? to_json(report) : to_text(report),
                   output);
      return report.passed ? 0 : 3;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
