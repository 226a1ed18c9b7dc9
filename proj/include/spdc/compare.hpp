#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "spdc/reference.hpp"
#include "spdc/sweep.hpp"

namespace spdc {

struct ComparisonEntry {
  const ReferenceRow* row = nullptr;  // points into the constant dataset
  double computed = 0;                // Hz
  double ratio = 0;                   // computed / printed
  double log10_ratio = 0;
  bool pass = false;
};

struct ComparisonReport {
  std::vector<ComparisonEntry> entries;

  bool all_pass() const;
  std::size_t failures() const;
};

/// One entry per dataset row, in dataset order. The curve point must sit at
/// the row intensity; a missing model or point is MissingModel.
ComparisonReport compare_reference(const std::vector<FluxCurve>& curves,
                                   std::span<const ReferenceRow> rows = reference_rows());

/// Evaluates the configured models at the dataset intensities and compares.
ComparisonReport run_comparison(const Experiment& exp);

/// Fixed-width table with a verdict per row and a summary line.
void print_report(std::ostream& out, const ComparisonReport& report);

}  // namespace spdc
