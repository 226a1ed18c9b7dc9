#pragma once

#include <optional>

#include "spdc/dispersion.hpp"

namespace spdc {

struct PumpDefinition {
  double wavelength = 532e-9;  // m
  Axis polarization = Axis::y;

  double omega() const;  // rad/s
};

/// Collinear three-wave configuration: which dispersion model each wave sees.
/// Type II default for x-cut KTP: pump y, signal z, idler y.
struct Interaction {
  PumpDefinition pump;
  DispersionModel pump_axis;
  DispersionModel signal_axis;
  DispersionModel idler_axis;
};

Interaction make_interaction(const CrystalDefinition& crystal, const PumpDefinition& pump,
                             Axis signal = Axis::z, Axis idler = Axis::y);

/// Frequency convention: every omega is rad/s. The acceptance slope alpha is
/// stored per ordinary frequency (1/(m Hz)) and both acceptance widths are
/// kept, so consumers say which one they take.
struct PhaseMatchSolution {
  double lambda_p = 0, lambda_s = 0, lambda_i = 0;  // m
  double omega_p = 0, omega_s = 0, omega_i = 0;     // rad/s, omega_p == omega_s + omega_i
  double n_p = 0, n_s = 0, n_i = 0;
  double n_gs = 0, n_gi = 0;
  double alpha = 0;             // d(delta k)/d(nu) at nu_s, 1/(m Hz)
  double length = 0;            // m, crystal length the widths refer to
  double delta_nu_acc = 0;      // Hz
  double delta_omega_acc = 0;   // rad/s, 2 pi delta_nu_acc
  double residual = 0;          // delta k at the root, rad/m
  int iterations = 0;

  double nu_s() const;
  double delta_n_g() const;  // |n_gs - n_gi|
};

struct SpectralAcceptance {
  double delta_nu;     // Hz
  double delta_omega;  // rad/s
};

/// Unnormalised sin(x)/x.
double sinc(double x);

/// Collinear phase mismatch in rad/m; idler frequency is omega_p - omega_s.
double delta_k(const Interaction& setup, double omega_s);

struct WavelengthBracket {
  double lambda_a;  // m, either order
  double lambda_b;
};

WavelengthBracket default_signal_bracket(const PumpDefinition& pump);

inline constexpr double kPhaseMatchTolerance = 1e-3;  // rad/m
inline constexpr int kPhaseMatchMaxIterations = 200;

/// Signal root of delta_k inside the bracket. The bracket is scanned first;
/// no sign change is NoRootInBracket and more than one is MultipleRoots.
PhaseMatchSolution solve_phase_matching(const Interaction& setup, double length,
                                        std::optional<WavelengthBracket> bracket = {});

/// 2 pi (n_gi - n_gs) / c, sign preserved.
double acceptance_slope(double n_gs, double n_gi);
double acceptance_slope(const Interaction& setup, double omega_s);

/// FWHM acceptance 4 / (|alpha| L), from sinc(dk L / 2) = 1/2 with the
/// half-width argument rounded to 2. Throws DegenerateAcceptance for alpha == 0.
SpectralAcceptance spectral_acceptance(double alpha, double length);

}  // namespace spdc
