#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spdc/compare.hpp"
#include "spdc/sweep.hpp"

namespace spdc {

/// Shortest round-trip decimal, '.' separator, no locale.
std::string format_number(double v);

inline constexpr const char* kCurveCsvHeader =
    "intensity_W_per_cm2,model,flux_Hz,beta_L,regime,quantum_efficiency";

/// Header plus one row per point, sorted by (model name, intensity).
void write_curves_csv(std::ostream& out, const std::vector<FluxCurve>& curves);
void write_comparison_csv(std::ostream& out, const ComparisonReport& report);

nlohmann::json solution_to_json(const PhaseMatchSolution& sol);
nlohmann::json report_to_json(const ComparisonReport& report);
/// {"columns": [...], "rows": [...], "comparison": ...}; rows in CSV order.
nlohmann::json curves_to_json(const std::vector<FluxCurve>& curves,
                              const ComparisonReport* report = nullptr);
std::vector<FluxCurve> curves_from_json(const nlohmann::json& doc);

/// Writes <dir>/<stem>.csv or <dir>/<stem>.json and returns the path. IoError
/// when the directory cannot be created or the file written.
std::filesystem::path emit(const std::vector<FluxCurve>& curves, const ComparisonReport* report,
                           OutputFormat format, const std::filesystem::path& dir,
                           const std::string& stem = "flux");

}  // namespace spdc
