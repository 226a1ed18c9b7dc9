#pragma once

#include "spdc/phasematch.hpp"

namespace spdc {

struct NhmGeometry {
  double sigma_p = 0;  // m^2, pump transverse section
  double sigma_s = 0;  // m^2, down-converted mode section
};

/// |sigma_p^2 / (sigma_s^2 + 2 sigma_p^2)|^2, in (0, 1/4].
double overlap_factor(double sigma_p, double sigma_s);
inline double overlap_factor(const NhmGeometry& g) { return overlap_factor(g.sigma_p, g.sigma_s); }

/// Gain rate (1/m) of the high-intensity branch:
///   kappa^2 = pi^2 chi^2 F I / (4 eps0 c n_s^2 n_i^2 n_p lambda_p^2)
double kappa_time(double intensity, double chi_eff, const PhaseMatchSolution& sol,
                  const NhmGeometry& geometry);

enum class NhmBranch { automatic, linear, exponential };

struct NhmInputs {
  double chi_eff = 0;
  double length = 0;            // m, L in the exponential prefactor c / (2 L n_s)
  NhmGeometry geometry;
  NhmBranch branch = NhmBranch::automatic;
  double crossover = 0;         // W/m^2; `automatic` goes exponential above this
};

/// Twin flux (Hz) at distance z:
///   linear:      2 chi^2 n_gs n_gi F I z / (eps0 n_s^2 n_i^2 n_p lambda_s^2 dn_g)
///   exponential: c / (2 L n_s) exp(2 kappa z)
/// The linear branch throws DegenerateGroupIndices when n_gs == n_gi.
double nhm_flux(double intensity, double z, const PhaseMatchSolution& sol, const NhmInputs& in);

/// Pump photons inside the crystal: I S lambda_p n_p L / (2 hbar c).
double pump_photons_in_crystal(double intensity, double surface, double lambda_p, double n_p,
                               double length);

/// sinh^2(sqrt(N_p0) |g| t), photons inside the crystal at time t.
double nhm_sinh_form(double pump_photons, double coupling, double t);

/// Output flux (Hz) from the in-crystal count: c / (L n_s) N.
double nhm_output_flux(double crystal_photons, double length, double n_s);

}  // namespace spdc
