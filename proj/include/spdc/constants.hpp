#pragma once

#include <numbers>

namespace spdc {

// SI, CODATA 2018. The vacuum permittivity is derived from mu0 and c so that
// eps0 * mu0 * c^2 == 1 holds to rounding.
namespace constants {
inline constexpr double pi = std::numbers::pi;
inline constexpr double c = 299792458.0;            // m/s
inline constexpr double mu0 = 1.25663706212e-6;     // N/A^2
inline constexpr double eps0 = 1.0 / (mu0 * c * c); // F/m
inline constexpr double hbar = 1.054571817e-34;     // J s
}  // namespace constants

namespace units {
inline constexpr double nm = 1e-9;
inline constexpr double um = 1e-6;
inline constexpr double pm_per_V = 1e-12;
// Intensities cross the external interfaces in W/cm^2.
inline constexpr double w_per_cm2 = 1e4;  // W/m^2

constexpr double from_w_per_cm2(double i) { return i * w_per_cm2; }
constexpr double to_w_per_cm2(double i) { return i / w_per_cm2; }
}  // namespace units

inline constexpr double angular_frequency(double wavelength) {
  return 2.0 * constants::pi * constants::c / wavelength;
}

inline constexpr double wavelength_of(double omega) {
  return 2.0 * constants::pi * constants::c / omega;
}

}  // namespace spdc
