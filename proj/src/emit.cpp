#include "spdc/emit.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "spdc/error.hpp"

namespace spdc {

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error(ErrorCode::IoError, "number formatting failed");
  return std::string(buf, end);
}

namespace {

struct Row {
  const FluxCurve* curve;
  const FluxPoint* point;
};

std::vector<Row> ordered_rows(const std::vector<FluxCurve>& curves) {
  std::vector<Row> rows;
  for (const auto& c : curves) {
    for (const auto& p : c.points) rows.push_back({&c, &p});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    const auto ma = to_string(a.curve->model), mb = to_string(b.curve->model);
    if (ma != mb) return ma < mb;
    return a.point->intensity < b.point->intensity;
  });
  return rows;
}

Regime parse_regime(const std::string& s) {
  if (s == "linear") return Regime::linear;
  if (s == "exponential") return Regime::exponential;
  throw Error(ErrorCode::ParseError, "unknown regime '" + s + "'");
}

}  // namespace

void write_curves_csv(std::ostream& out, const std::vector<FluxCurve>& curves) {
  out << kCurveCsvHeader << "\n";
  for (const auto& r : ordered_rows(curves)) {
    const auto& p = *r.point;
    out << format_number(p.intensity) << ',' << to_string(r.curve->model) << ','
        << format_number(p.flux) << ',' << format_number(p.beta_l) << ',' << to_string(p.regime)
        << ',' << format_number(p.quantum_efficiency) << '\n';
  }
}

void write_comparison_csv(std::ostream& out, const ComparisonReport& report) {
  out << "source,model,intensity_W_per_cm2,printed_Hz,computed_Hz,ratio,log10_ratio,tolerance,"
         "pass,rationale\n";
  for (const auto& e : report.entries) {
    out << e.row->source << ',' << to_string(e.row->model) << ','
        << format_number(e.row->intensity) << ',' << format_number(e.row->printed) << ','
        << format_number(e.computed) << ',' << format_number(e.ratio) << ','
        << format_number(e.log10_ratio) << ',' << e.row->tolerance.describe() << ','
        << (e.pass ? "true" : "false") << ",\"" << e.row->rationale << "\"\n";
  }
}

nlohmann::json solution_to_json(const PhaseMatchSolution& sol) {
  return {
      {"lambda_p_m", sol.lambda_p},   {"lambda_s_m", sol.lambda_s},
      {"lambda_i_m", sol.lambda_i},   {"n_p", sol.n_p},
      {"n_s", sol.n_s},               {"n_i", sol.n_i},
      {"n_gs", sol.n_gs},             {"n_gi", sol.n_gi},
      {"alpha_per_m_Hz", sol.alpha},  {"length_m", sol.length},
      {"delta_nu_acc_Hz", sol.delta_nu_acc},
      {"delta_omega_acc_rad_per_s", sol.delta_omega_acc},
      {"residual_rad_per_m", sol.residual},
      {"iterations", sol.iterations},
  };
}

nlohmann::json report_to_json(const ComparisonReport& report) {
  auto rows = nlohmann::json::array();
  for (const auto& e : report.entries) {
    rows.push_back({
        {"source", e.row->source},
        {"model", to_string(e.row->model)},
        {"intensity_W_per_cm2", e.row->intensity},
        {"experimental_Hz", e.row->experimental},
        {"printed_Hz", e.row->printed},
        {"computed_Hz", e.computed},
        {"ratio", e.ratio},
        {"log10_ratio", e.log10_ratio},
        {"tolerance", e.row->tolerance.describe()},
        {"pass", e.pass},
        {"rationale", e.row->rationale},
    });
  }
  return {{"rows", rows}, {"failures", report.failures()}, {"all_pass", report.all_pass()}};
}

nlohmann::json curves_to_json(const std::vector<FluxCurve>& curves,
                              const ComparisonReport* report) {
  auto rows = nlohmann::json::array();
  for (const auto& r : ordered_rows(curves)) {
    const auto& p = *r.point;
    rows.push_back({
        {"intensity_W_per_cm2", p.intensity},
        {"model", to_string(r.curve->model)},
        {"flux_Hz", p.flux},
        {"beta_L", p.beta_l},
        {"regime", to_string(p.regime)},
        {"quantum_efficiency", p.quantum_efficiency},
    });
  }
  nlohmann::json doc;
  doc["columns"] = {"intensity_W_per_cm2", "model",  "flux_Hz",
                    "beta_L",              "regime", "quantum_efficiency"};
  doc["rows"] = rows;
  doc["comparison"] = report ? report_to_json(*report) : nlohmann::json(nullptr);
  return doc;
}

std::vector<FluxCurve> curves_from_json(const nlohmann::json& doc) {
  std::vector<FluxCurve> curves;
  try {
    for (const auto& r : doc.at("rows")) {
      const Model m = parse_model(r.at("model").get<std::string>());
      auto it = std::find_if(curves.begin(), curves.end(),
                             [&](const FluxCurve& c) { return c.model == m; });
      if (it == curves.end()) {
        curves.push_back({m, {}});
        it = std::prev(curves.end());
      }
      FluxPoint p;
      p.intensity = r.at("intensity_W_per_cm2").get<double>();
      p.flux = r.at("flux_Hz").get<double>();
      p.beta_l = r.at("beta_L").get<double>();
      p.regime = parse_regime(r.at("regime").get<std::string>());
      p.quantum_efficiency = r.at("quantum_efficiency").get<double>();
      it->points.push_back(p);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return curves;
}

std::filesystem::path emit(const std::vector<FluxCurve>& curves, const ComparisonReport* report,
                           OutputFormat format, const std::filesystem::path& dir,
                           const std::string& stem) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
  const auto path = dir / (stem + (format == OutputFormat::csv ? ".csv" : ".json"));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  if (format == OutputFormat::csv) {
    write_curves_csv(out, curves);
  } else {
    out << curves_to_json(curves, report).dump(2) << "\n";
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
  return path;
}

}  // namespace spdc
