#pragma once

#include <span>
#include <string_view>

#include "spdc/config.hpp"

namespace spdc {

// Acceptance band on computed/printed: a plain factor, or decades.
struct Tolerance {
  enum class Kind { factor, orders };
  Kind kind = Kind::factor;
  double value = 2.0;

  bool accepts(double ratio) const;
  std::string describe() const;  // "x2", "1.5 dec"
};

struct ReferenceRow {
  double intensity;      // W/cm^2
  double experimental;   // Hz, measured flux at that intensity
  Model model;
  double printed;        // Hz, the model value as published
  Tolerance tolerance;
  std::string_view source;
  std::string_view rationale;
};

// Published single numbers used for spot checks.
struct PrintedConstants {
  double lambda_s = 1037e-9;           // m
  double lambda_i = 1092e-9;           // m
  double alpha = -1.97e-9;             // 1/(m Hz)
  double delta_omega = 2e11;           // Hz, quoted acceptance width
  double delta_e = 12.5;               // V/m, computed vacuum field
  double delta_e_fitted = 62.5;        // V/m, value that fits the measurements
  double intensity_limit = 30e6;       // W/cm^2
  double surface = 2.5e-8;             // m^2
  double index_for_seed = 1.7;
  double gamma_calibration = 3.0;      // chi_eff multiplier fitting the quantum models
};

struct BeamSetup {
  std::string_view name;   // cw, ns, ps
  double waist;            // m, 1/e^2 radius
  double imin, imax;       // W/cm^2, covered range

  double surface() const;  // pi w^2
};

struct EfficiencyEndpoint {
  double intensity;   // W/cm^2
  double flux;        // Hz
  double efficiency;  // printed N_twin / N_p
  std::string_view beam;
};

std::span<const ReferenceRow> reference_rows();
const PrintedConstants& printed_constants();
std::span<const BeamSetup> beam_setups();
const BeamSetup& beam_setup(std::string_view name);
std::span<const EfficiencyEndpoint> efficiency_endpoints();

/// Distinct intensities of the table rows, ascending, W/cm^2.
std::vector<double> reference_intensities();

}  // namespace spdc
