#include "spdc/compare.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "spdc/error.hpp"

namespace spdc {

bool ComparisonReport::all_pass() const { return failures() == 0; }

std::size_t ComparisonReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.pass; }));
}

namespace {

const FluxPoint* find_point(const FluxCurve& curve, double intensity) {
  for (const auto& p : curve.points) {
    if (std::abs(p.intensity - intensity) <= 1e-12 * intensity) return &p;
  }
  return nullptr;
}

}  // namespace

ComparisonReport compare_reference(const std::vector<FluxCurve>& curves,
                                   std::span<const ReferenceRow> rows) {
  ComparisonReport report;
  for (const auto& row : rows) {
    auto curve = std::find_if(curves.begin(), curves.end(),
                              [&](const FluxCurve& c) { return c.model == row.model; });
    if (curve == curves.end()) {
      throw Error(ErrorCode::MissingModel,
                  "dataset needs model '" + std::string(to_string(row.model)) + "'");
    }
    const FluxPoint* p = find_point(*curve, row.intensity);
    if (!p) {
      throw Error(ErrorCode::MissingModel, "model '" + std::string(to_string(row.model)) +
                                               "' was not evaluated at " +
                                               std::to_string(row.intensity) + " W/cm^2");
    }
    ComparisonEntry e;
    e.row = &row;
    e.computed = p->flux;
    e.ratio = p->flux / row.printed;
    e.log10_ratio = std::log10(e.ratio);
    e.pass = row.tolerance.accepts(e.ratio);
    report.entries.push_back(e);
  }
  return report;
}

ComparisonReport run_comparison(const Experiment& exp) {
  return compare_reference(run_sweep(exp, reference_intensities()));
}

void print_report(std::ostream& out, const ComparisonReport& report) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::left << std::setw(6) << "model" << std::right << std::setw(11) << "I_W/cm2"
      << std::setw(12) << "printed" << std::setw(12) << "computed" << std::setw(9) << "ratio"
      << std::setw(8) << "dec" << std::setw(9) << "tol" << "  verdict\n";
  for (const auto& e : report.entries) {
    out << std::left << std::setw(6) << to_string(e.row->model) << std::right << std::scientific
        << std::setprecision(2) << std::setw(11) << e.row->intensity << std::setw(12)
        << e.row->printed << std::setw(12) << e.computed << std::defaultfloat
        << std::setprecision(3) << std::setw(9) << e.ratio << std::fixed << std::setprecision(2)
        << std::setw(8) << e.log10_ratio << std::defaultfloat << std::setw(9)
        << e.row->tolerance.describe() << "  " << (e.pass ? "pass" : "FAIL") << "  "
        << e.row->rationale << "\n";
  }
  out << report.entries.size() - report.failures() << "/" << report.entries.size()
      << " rows within tolerance\n";
  out.flags(flags);
  out.precision(prec);
}

}  // namespace spdc
