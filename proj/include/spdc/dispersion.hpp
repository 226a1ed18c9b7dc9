#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace spdc {

enum class Axis { x, y, z };

std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view label);

/// Single-axis Sellmeier model with wavelength in micrometres:
///
///   n^2(lambda) = A + sum_k B_k / (lambda^2 - C_k) + sum_m D_m * lambda^(2 p_m)
///
/// Coefficients are kept exactly as published. The validity window is in
/// metres; evaluating outside of it throws OutOfTransparencyRange.
struct DispersionModel {
  struct Pole {
    double strength;   // B, um^2
    double resonance;  // C, um^2
  };
  struct Power {
    double coefficient;  // D
    int exponent;        // p, multiplies lambda^(2p)
  };

  Axis axis = Axis::y;
  double constant = 1.0;
  std::vector<Pole> poles;
  std::vector<Power> powers;
  double lambda_min = 0.0;  // m
  double lambda_max = 0.0;  // m

  bool contains(double wavelength) const {
    return wavelength >= lambda_min && wavelength <= lambda_max;
  }
};

struct CrystalDefinition {
  std::string name;
  std::string source;
  std::vector<DispersionModel> axes;

  const DispersionModel& axis(Axis a) const;
  bool has_axis(Axis a) const;
};

double refractive_index(const DispersionModel& model, double wavelength);

/// Analytic dn/dlambda in 1/m.
double index_derivative(const DispersionModel& model, double wavelength);

/// n - lambda dn/dlambda.
double group_index(const DispersionModel& model, double wavelength);

/// Crystal-definition files are YAML. Recognised keys:
///   crystal, source, axes.<x|y|z>.{validity_nm, constant, poles, powers}
/// `poles` is a list of [B, C] pairs, `powers` a list of [D, p] pairs.
/// Unknown keys, missing keys and poles inside the validity window are
/// ParseErrors carrying the origin and line number.
CrystalDefinition parse_crystal_definition(std::string_view text,
                                           std::string_view origin = "<string>");
CrystalDefinition load_crystal_definition(const std::filesystem::path& path);

/// Path of a file shipped in the data directory. SPDC_DATA_DIR in the
/// environment overrides the compiled-in location.
std::filesystem::path data_file(std::string_view name);

inline constexpr std::string_view kDefaultCrystalFile = "ktp_kato1991.yaml";

}  // namespace spdc
