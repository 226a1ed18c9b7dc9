#include "spdc/reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "spdc/constants.hpp"
#include "spdc/error.hpp"

namespace spdc {

bool Tolerance::accepts(double ratio) const {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) return false;
  if (kind == Kind::factor) return ratio <= value && ratio >= 1.0 / value;
  return std::abs(std::log10(ratio)) <= value;
}

std::string Tolerance::describe() const {
  std::ostringstream os;
  if (kind == Kind::factor) {
    os << "x" << value;
  } else {
    os << value << " dec";
  }
  return os.str();
}

double BeamSetup::surface() const { return constants::pi * waist * waist; }

namespace {

constexpr Tolerance factor(double v) { return {Tolerance::Kind::factor, v}; }
constexpr Tolerance orders(double v) { return {Tolerance::Kind::orders, v}; }

constexpr std::string_view kLinear =
    "linear regime: flux proportional to I, only prefactor conventions differ";
constexpr std::string_view kNhmLinear =
    "linear regime: the down-converted section is not published, equal sections assumed";
constexpr std::string_view kScmLinear =
    "linear regime: seed bandwidth and cross-term conventions shift the prefactor";
constexpr std::string_view kScmHigh =
    "exponential regime: exp(2 beta L) amplifies percent-level index and seed differences";
constexpr std::string_view kQuantumMid =
    "exponential regime: gain-band width and measure conventions compound in the exponent";
constexpr std::string_view kQuantumHigh =
    "deep exponential regime: exponent of order 20, a few percent in the rate is an order in flux";

// Experimental column is identical in the three tables.
constexpr std::array<ReferenceRow, 12> kRows{{
    {2.4, 1.1e4, Model::nmm, 1.1e3, factor(2), "nmm_table", kLinear},
    {6.6e3, 4e7, Model::nmm, 2.7e6, factor(2), "nmm_table", kLinear},
    {5.5e8, 3.7e14, Model::nmm, 2.0e11, orders(1.5), "nmm_table", kQuantumMid},
    {3.7e9, 1.2e21, Model::nmm, 2.4e13, orders(2), "nmm_table", kQuantumHigh},
    {2.4, 1.1e4, Model::nhm, 8.6e2, factor(3), "nhm_table", kNhmLinear},
    {6.6e3, 4e7, Model::nhm, 1.3e6, factor(3), "nhm_table", kNhmLinear},
    {5.5e8, 3.7e14, Model::nhm, 1.6e11, orders(1.5), "nhm_table", kQuantumMid},
    {3.7e9, 1.2e21, Model::nhm, 1.9e13, orders(2), "nhm_table", kQuantumHigh},
    {2.4, 1.1e4, Model::scm, 3.5e2, factor(3), "scm_table", kScmLinear},
    {6.6e3, 4e7, Model::scm, 9.7e5, factor(3), "scm_table", kScmLinear},
    {5.5e8, 3.7e14, Model::scm, 1.75e13, factor(5), "scm_table", kScmHigh},
    {3.7e9, 1.2e21, Model::scm, 3.5e19, factor(5), "scm_table", kScmHigh},
}};

constexpr PrintedConstants kConstants{};

constexpr std::array<BeamSetup, 3> kBeams{{
    {"cw", 78e-6, 1.0, 7e3},
    {"ns", 250e-6, 7e3, 1e5},
    {"ps", 90e-6, 160e6, 6e9},
}};

constexpr std::array<EfficiencyEndpoint, 2> kEndpoints{{
    {2.4, 1.1e4, 1.8e-11, "cw"},
    {3.7e9, 1.2e21, 9.2e-4, "ps"},
}};

}  // namespace

std::span<const ReferenceRow> reference_rows() { return kRows; }
const PrintedConstants& printed_constants() { return kConstants; }
std::span<const BeamSetup> beam_setups() { return kBeams; }
std::span<const EfficiencyEndpoint> efficiency_endpoints() { return kEndpoints; }

const BeamSetup& beam_setup(std::string_view name) {
  for (const auto& b : kBeams) {
    if (b.name == name) return b;
  }
  throw Error(ErrorCode::InvalidArgument, "no beam setup '" + std::string(name) + "'");
}

std::vector<double> reference_intensities() {
  std::vector<double> out;
  for (const auto& r : kRows) out.push_back(r.intensity);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace spdc
