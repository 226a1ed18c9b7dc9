#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spdc/dispersion.hpp"
#include "spdc/nhm.hpp"
#include "spdc/nmm.hpp"
#include "spdc/scm.hpp"
#include "spdc/vacuum.hpp"

namespace spdc {

enum class Model { scm, scm_ode, nmm, nhm };

std::string_view to_string(Model m);
Model parse_model(std::string_view name);  // ValidationError("models") on unknown names
std::vector<Model> parse_model_list(std::string_view comma_separated);

enum class OutputFormat { csv, json };
std::string_view to_string(OutputFormat f);
OutputFormat parse_output_format(std::string_view name);

struct CrystalConfig {
  std::string file{kDefaultCrystalFile};  // bare names resolve in the data directory
  double length = 0.01;                   // m
  double chi_eff = 5.3e-12;               // m/V
  double surface = 2.5e-8;                // m^2
  Axis signal_axis = Axis::z;
  Axis idler_axis = Axis::y;

  bool operator==(const CrystalConfig&) const = default;
};

// Sweep bounds are W/cm^2 like every external intensity.
struct SweepConfig {
  double imin = 1.0;
  double imax = 1e10;
  int points = 100;
  bool log_spacing = true;

  bool operator==(const SweepConfig&) const = default;
};

struct PumpConfig {
  double wavelength = 532e-9;  // m
  Axis polarization = Axis::y;
  SweepConfig sweep;

  bool operator==(const PumpConfig&) const = default;
};

struct Conventions {
  SpectralMeasure nmm_units = SpectralMeasure::per_hz;
  SeedBandwidth seed_bandwidth = SeedBandwidth::hz;
  std::optional<double> seed_override;  // V/m
  CrossTerm cross_term = CrossTerm::derived;
  std::optional<double> nhm_sigma_s;    // m^2, defaults to the crystal surface
  NhmBranch nhm_branch = NhmBranch::automatic;

  bool operator==(const Conventions&) const = default;
};

struct NumericsConfig {
  int ode_steps = 10000;
  int jobs = 1;

  bool operator==(const NumericsConfig&) const = default;
};

struct OutputConfig {
  std::string directory = ".";
  OutputFormat format = OutputFormat::csv;

  bool operator==(const OutputConfig&) const = default;
};

struct ExperimentConfig {
  CrystalConfig crystal;
  PumpConfig pump;
  std::vector<Model> models{Model::scm, Model::scm_ode, Model::nmm, Model::nhm};
  Conventions conventions;
  NumericsConfig numerics;
  OutputConfig output;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Throws ValidationError naming the first offending key.
void validate_config(const ExperimentConfig& cfg);

ExperimentConfig parse_config(std::string_view text, std::string_view origin = "<string>");
ExperimentConfig load_config(const std::filesystem::path& path);

/// YAML text that parses back to an equal config.
std::string serialize_config(const ExperimentConfig& cfg);

/// Sweep intensities in W/cm^2, ascending.
std::vector<double> sweep_grid(const SweepConfig& sweep);

std::filesystem::path resolve_crystal_file(const CrystalConfig& crystal);

}  // namespace spdc
