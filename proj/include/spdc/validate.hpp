#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spdc/sweep.hpp"

namespace spdc {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationOptions {
  int random_geometries = 10000;
  unsigned long long seed = 20240607;
};

/// Internal-consistency suite on a configured experiment: root quality,
/// acceptance slope by two routes, the beta L = 1 closure, closed form versus
/// full integration, asymptotic limits, monotonicity, sqrt(I) scaling, density
/// continuity at the gain-band edge and overlap-factor bounds.
std::vector<Check> run_validation(const Experiment& exp, const ValidationOptions& opts = {});

void print_checks(std::ostream& out, const std::vector<Check>& checks);

}  // namespace spdc
