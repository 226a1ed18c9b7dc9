// spdcflux: twin-photon flux versus pump intensity.
//
//   spdcflux solve    [--config f] [--format csv|json]
//   spdcflux sweep    [--config f] [--models a,b] [--output dir] [--format csv|json] ...
//   spdcflux compare  [--config f] [--ci] [--output dir] ...
//   spdcflux validate [--config f] [--ci]
//
// Exit status: 0 ok, 1 usage or config error, 2 numerical failure,
// 3 comparison or validation failure under --ci.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "spdc/compare.hpp"
#include "spdc/config.hpp"
#include "spdc/constants.hpp"
#include "spdc/emit.hpp"
#include "spdc/error.hpp"
#include "spdc/sweep.hpp"
#include "spdc/validate.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumeric = 2, kCompare = 3 };

struct Overrides {
  std::string config;
  std::string models;
  std::string output;
  std::string format;
  std::optional<double> seed_override;
  std::optional<int> points;
  std::optional<double> imin, imax;
  std::optional<int> jobs;
  bool ci = false;
};

spdc::ExperimentConfig build_config(const Overrides& o) {
  spdc::ExperimentConfig cfg;
  if (!o.config.empty()) cfg = spdc::load_config(o.config);
  if (!o.models.empty()) cfg.models = spdc::parse_model_list(o.models);
  if (!o.output.empty()) cfg.output.directory = o.output;
  if (!o.format.empty()) cfg.output.format = spdc::parse_output_format(o.format);
  if (o.seed_override) cfg.conventions.seed_override = *o.seed_override;
  if (o.points) cfg.pump.sweep.points = *o.points;
  if (o.imin) cfg.pump.sweep.imin = *o.imin;
  if (o.imax) cfg.pump.sweep.imax = *o.imax;
  if (o.jobs) cfg.numerics.jobs = *o.jobs;
  spdc::validate_config(cfg);
  return cfg;
}

void print_solution(std::ostream& out, const spdc::Experiment& exp) {
  const auto& s = exp.solution();
  const auto& seed = exp.seed();
  out << std::setprecision(6);
  out << "crystal          " << exp.crystal().name << " (" << exp.crystal().source << ")\n";
  out << "lambda_p  [nm]   " << s.lambda_p * 1e9 << "  n_p  " << s.n_p << "\n";
  out << "lambda_s  [nm]   " << s.lambda_s * 1e9 << "  n_s  " << s.n_s << "  n_gs " << s.n_gs
      << "\n";
  out << "lambda_i  [nm]   " << s.lambda_i * 1e9 << "  n_i  " << s.n_i << "  n_gi " << s.n_gi
      << "\n";
  out << "residual [rad/m] " << s.residual << "  (" << s.iterations << " iterations)\n";
  out << "alpha [1/(m Hz)] " << s.alpha << "\n";
  out << "dnu_acc   [Hz]   " << s.delta_nu_acc << "\n";
  out << "domega  [rad/s]  " << s.delta_omega_acc << "\n";
  out << "dE_s, dE_i [V/m] " << seed.field_s << ", " << seed.field_i
      << (seed.calibrated ? "  (calibrated override)" : "") << "\n";
  out << "I_lim [W/cm^2]   " << spdc::units::to_w_per_cm2(exp.limit_intensity()) << "\n";
}

int run_solve(const Overrides& o) {
  auto cfg = build_config(o);
  spdc::Experiment exp(cfg);
  if (!o.format.empty() && cfg.output.format == spdc::OutputFormat::json) {
    auto doc = spdc::solution_to_json(exp.solution());
    doc["delta_E_s_V_per_m"] = exp.seed().field_s;
    doc["delta_E_i_V_per_m"] = exp.seed().field_i;
    doc["seed_calibrated"] = exp.seed().calibrated;
    doc["limit_intensity_W_per_cm2"] = spdc::units::to_w_per_cm2(exp.limit_intensity());
    std::cout << doc.dump(2) << "\n";
  } else {
    print_solution(std::cout, exp);
  }
  return kOk;
}

int run_sweep(const Overrides& o) {
  auto cfg = build_config(o);
  const auto curves = spdc::run_sweep(cfg);
  const auto path = spdc::emit(curves, nullptr, cfg.output.format, cfg.output.directory);
  std::cerr << "wrote " << path.string() << "\n";
  return kOk;
}

int run_compare(const Overrides& o) {
  auto cfg = build_config(o);
  spdc::Experiment exp(cfg);
  const auto curves = spdc::run_sweep(exp, spdc::reference_intensities());
  const auto report = spdc::compare_reference(curves);
  spdc::print_report(std::cout, report);
  if (!o.output.empty()) {
    if (cfg.output.format == spdc::OutputFormat::csv) {
      std::filesystem::create_directories(cfg.output.directory);
      const auto path = std::filesystem::path(cfg.output.directory) / "comparison.csv";
      std::ofstream out(path, std::ios::binary);
      if (!out) throw spdc::Error(spdc::ErrorCode::IoError, "cannot write " + path.string());
      spdc::write_comparison_csv(out, report);
      std::cerr << "wrote " << path.string() << "\n";
    } else {
      const auto path = spdc::emit(curves, &report, cfg.output.format, cfg.output.directory,
                                   "comparison");
      std::cerr << "wrote " << path.string() << "\n";
    }
  }
  return (o.ci && !report.all_pass()) ? kCompare : kOk;
}

int run_validate(const Overrides& o) {
  auto cfg = build_config(o);
  spdc::Experiment exp(cfg);
  const auto checks = spdc::run_validation(exp);
  spdc::print_checks(std::cout, checks);
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  return (o.ci && !ok) ? kCompare : kOk;
}

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "YAML experiment configuration");
  cmd->add_option("--seed-override", o.seed_override, "fixed vacuum seed field, V/m");
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SPDC twin-photon flux versus pump intensity"};
  app.require_subcommand(1);
  Overrides o;

  auto* solve = app.add_subcommand("solve", "phase-matching report");
  add_common(solve, o);
  solve->add_option("--format", o.format, "text by default, or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "flux curves over the intensity sweep");
  auto* compare = app.add_subcommand("compare", "regression against the published tables");
  for (auto* cmd : {sweep, compare}) {
    add_common(cmd, o);
    cmd->add_option("--models", o.models, "comma-separated subset of scm,scm_ode,nmm,nhm");
    cmd->add_option("--output", o.output, "output directory");
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  }
  sweep->add_option("--points", o.points, "sweep points");
  sweep->add_option("--imin", o.imin, "lowest intensity, W/cm^2");
  sweep->add_option("--imax", o.imax, "highest intensity, W/cm^2");
  compare->add_flag("--ci", o.ci, "exit 3 when any row is out of tolerance");

  auto* validate = app.add_subcommand("validate", "internal-consistency checks");
  add_common(validate, o);
  validate->add_option("--points", o.points, "sweep points");
  validate->add_flag("--ci", o.ci, "exit 3 when any check fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return run_solve(o);
    if (*sweep) return run_sweep(o);
    if (*compare) return run_compare(o);
    if (*validate) return run_validate(o);
  } catch (const spdc::Error& e) {
    std::cerr << "spdcflux: " << e.what() << "\n";
    const bool usage = e.is_input_error() || e.code() == spdc::ErrorCode::MissingModel;
    return usage ? kUsage : kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "spdcflux: " << e.what() << "\n";
    return kNumeric;
  }
  return kUsage;
}
