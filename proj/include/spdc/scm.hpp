#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "spdc/phasematch.hpp"
#include "spdc/vacuum.hpp"

namespace spdc {

using cdouble = std::complex<double>;

struct FieldTriple {
  cdouble pump{};
  cdouble signal{};
  cdouble idler{};
  double z = 0.0;  // m
};

struct ScmParameters {
  double kappa_p = 0, kappa_s = 0, kappa_i = 0;  // omega / (2 n c)
  double beta = 0;                               // 1/m
  double length = 0;                             // m
  double chi_eff = 0;                            // m/V
  double intensity = 0;                          // W/m^2
  double pump_field = 0;                         // |E_p(0)|, V/m

  double beta_length() const { return beta * length; }
};

/// |E| = sqrt(2 I / (eps0 c n)), i.e. I = eps0 c n |E|^2 / 2.
double pump_field_amplitude(double intensity, double n_p);

/// omega eps0 mu0 c / (2 n) == omega / (2 n c).
double coupling_kappa(double omega, double index);

/// beta = chi_eff |E_p(0)| sqrt(kappa_s kappa_i).
double parametric_gain(double intensity, const PhaseMatchSolution& sol, double chi_eff);

ScmParameters make_scm_parameters(const PhaseMatchSolution& sol, double intensity,
                                  double chi_eff, double length);

/// Cross-term ratio multiplying the idler seed in the generated signal.
/// `derived` is sqrt(kappa_s/kappa_i) = sqrt(omega_s n_i / (omega_i n_s)), the
/// exact undepleted-pump solution; `printed` is sqrt(omega_s n_s / (omega_i n_i)).
enum class CrossTerm { derived, printed };
double cross_term_factor(const PhaseMatchSolution& sol, CrossTerm form);

/// Complex initial conditions for a vacuum seed with a real positive pump:
/// E_s(0) = dE_s, E_i(0) = j dE_i. This relative phase makes the amplified
/// idler feed the signal in phase.
FieldTriple seed_fields(const VacuumSeed& seed, double pump_field);

/// Undepleted-pump propagation of arbitrary initial fields (pump taken real
/// positive). Fields at z follow from the cosh/sinh solution.
FieldTriple propagate_upa(const FieldTriple& initial, double beta, const PhaseMatchSolution& sol,
                          double z);
FieldTriple propagate_upa(const VacuumSeed& seed, double beta, const PhaseMatchSolution& sol,
                          double z, double pump_field = 0.0);

/// Closed-form twin flux (Hz) from the generated signal field E_s - dE_s:
///   eps0 n_s c S / (4 hbar omega_s) * (dE_s (cosh bL - 1) + r dE_i sinh bL)^2
double scm_flux(const VacuumSeed& seed, double beta, const PhaseMatchSolution& sol, double length,
                CrossTerm form = CrossTerm::derived);

enum class AsymptoticBranch { linear, exponential };

/// Small- and large-gain limits of scm_flux with alpha per Hz:
///   linear:      pi chi^2 I L / (2 eps0 c n_s n_i n_p lambda_s^2 |alpha|)
///   exponential: exp(2 beta L) / (4 pi |alpha| L)
/// With `enforce_regime`, asking for a branch on the wrong side of beta L = 1
/// throws WrongRegime.
double scm_flux_asymptotic(double intensity, const PhaseMatchSolution& sol, double chi_eff,
                           double length, AsymptoticBranch branch, bool enforce_regime = false);

/// Pump intensity (W/m^2) at which beta L = 1.
double limit_intensity(const PhaseMatchSolution& sol, double chi_eff, double length);

/// Photon flux (Hz) carried by a field: eps0 n c S |E|^2 / (4 hbar omega).
double photon_flux(cdouble field, double index, double omega, double surface);

// ---------------------------------------------------------------------------
// Full coupled-wave integration (pump depletion included)

struct OdeOptions {
  int steps = 10000;
  bool check_convergence = true;
  double convergence_tolerance = 1e-6;  // relative change under step halving
  int record_stride = 1;                // keep every n-th sample, plus the last
};

struct Trajectory {
  std::vector<FieldTriple> samples;
  int steps = 0;
  double convergence_change = 0.0;  // observed relative change under halving
};

/// Fixed-step RK4 over [0, L] for the three coupled complex amplitudes.
/// Throws StepCountTooSmall for steps < 1 or when doubling the step count
/// changes any generated field by more than the tolerance.
Trajectory integrate_full_system(const FieldTriple& initial, const PhaseMatchSolution& sol,
                                 double chi_eff, double length, const OdeOptions& options = {});

struct ManleyRoweResidual {
  double signal_idler = 0;  // max |M(z) - M(0)| / (n_s|E_s|^2/w_s + n_i|E_i|^2/w_i)
  double pump_signal = 0;   // max relative drift of n_p|E_p|^2/w_p + n_s|E_s|^2/w_s
};

ManleyRoweResidual manley_rowe_residual(const Trajectory& traj, const PhaseMatchSolution& sol);

/// 1 - |E_p(L)|^2 / |E_p(0)|^2
double pump_depletion(const Trajectory& traj);

struct OdeFlux {
  double flux = 0;             // Hz, from |E_s(L) - E_s(0)|^2
  double signal_photons = 0;   // Hz, generated: N_s(L) - N_s(0)
  double idler_photons = 0;    // Hz, generated: N_i(L) - N_i(0)
  double depletion = 0;
  ManleyRoweResidual manley_rowe;
};

OdeFlux scm_ode_flux(const VacuumSeed& seed, double intensity, const PhaseMatchSolution& sol,
                     double chi_eff, double length, const OdeOptions& options = {});

/// CSV with columns z_m,abs_E_p,abs_E_s,abs_E_i.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace spdc
