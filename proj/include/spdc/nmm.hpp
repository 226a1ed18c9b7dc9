#pragma once

#include <Eigen/Core>
#include <iosfwd>

#include "spdc/phasematch.hpp"

namespace spdc {

/// Measure of the spectral integral: d(nu) (default) or d(omega) = 2 pi d(nu).
enum class SpectralMeasure { per_hz, per_rad };

/// f2(omega) = sqrt( omega (omega_p - omega) / (16 pi eps0 c^3 n_p n_s(omega) n_i(omega_p - omega)) )
double nmm_f2(const Interaction& setup, double omega);

/// C2(omega) = 2 pi f2^2 I chi^2 - dk^2 / 4; positive means parametric gain.
double nmm_c2(const Interaction& setup, double omega, double intensity, double chi_eff);

/// Signal flux spectral density at z. Gain branch I chi^2 f2^2 sinh^2(sqrt(C) z) / C,
/// oscillating branch I chi^2 f2^2 z^2 sinc^2(sqrt(|C|) z); both meet at I chi^2 f2^2 z^2.
double nmm_density(const Interaction& setup, double omega, double z, double intensity,
                   double chi_eff);

/// Idler density at omega, i.e. the signal density at omega_p - omega.
double nmm_idler_density(const Interaction& setup, double omega, double z, double intensity,
                         double chi_eff);

/// Half-width (Hz) of the exponential-gain band around phase matching:
/// f2 chi sqrt(8 pi I) / |alpha|, with alpha per Hz.
double strong_bandwidth(const Interaction& setup, const PhaseMatchSolution& sol,
                        double intensity, double chi_eff);

struct NmmOptions {
  SpectralMeasure measure = SpectralMeasure::per_hz;
  double tolerance = 5e-3;          // relative change between successive refinements
  double window_acceptances = 100;  // half-window in units of the acceptance width
  int initial_intervals = 4096;
  int max_refinements = 8;
  bool tail_correction = true;      // analytic sinc^2 tails beyond the window
};

struct NmmSpectrum {
  Eigen::ArrayXd detuning;  // Hz from nu_s
  Eigen::ArrayXd density;   // integrand of the spectral integral
  double total = 0;         // Hz
  double strong_bandwidth = 0;
  SpectralMeasure measure = SpectralMeasure::per_hz;
  int intervals = 0;
};

/// Total twin flux (Hz): Simpson quadrature of nmm_density over detuning from
/// phase matching (exact dispersion), refined by doubling until the relative
/// change is below the tolerance. Throws QuadratureNotConverged otherwise.
double nmm_flux(const Interaction& setup, const PhaseMatchSolution& sol, double intensity,
                double z, double chi_eff, const NmmOptions& options = {});

/// Density sampled on `points` detunings spanning the integration window.
NmmSpectrum nmm_spectrum(const Interaction& setup, const PhaseMatchSolution& sol,
                         double intensity, double z, double chi_eff, int points,
                         const NmmOptions& options = {});

/// Low-gain closed form, alpha per Hz:
///   pi^2 chi^2 I z / (2 eps0 c n_p n_s n_i lambda_s^2 |alpha|)
double nmm_flux_linear_limit(const PhaseMatchSolution& sol, double intensity, double z,
                             double chi_eff);

/// CSV with columns detuning_Hz,density.
void write_spectrum_csv(std::ostream& out, const NmmSpectrum& spectrum);

}  // namespace spdc
