#include "spdc/scm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "spdc/constants.hpp"
#include "spdc/error.hpp"

namespace spdc {

using namespace constants;

double pump_field_amplitude(double intensity, double n_p) {
  if (intensity < 0.0) throw Error(ErrorCode::NegativeIntensity, "pump intensity must be >= 0");
  return std::sqrt(2.0 * intensity / (eps0 * c * n_p));
}

double coupling_kappa(double omega, double index) { return omega / (2.0 * index * c); }

double parametric_gain(double intensity, const PhaseMatchSolution& sol, double chi_eff) {
  const double ep = pump_field_amplitude(intensity, sol.n_p);
  const double ks = coupling_kappa(sol.omega_s, sol.n_s);
  const double ki = coupling_kappa(sol.omega_i, sol.n_i);
  return chi_eff * ep * std::sqrt(ks * ki);
}

ScmParameters make_scm_parameters(const PhaseMatchSolution& sol, double intensity,
                                  double chi_eff, double length) {
  ScmParameters p;
  p.kappa_p = coupling_kappa(sol.omega_p, sol.n_p);
  p.kappa_s = coupling_kappa(sol.omega_s, sol.n_s);
  p.kappa_i = coupling_kappa(sol.omega_i, sol.n_i);
  p.pump_field = pump_field_amplitude(intensity, sol.n_p);
  p.beta = chi_eff * p.pump_field * std::sqrt(p.kappa_s * p.kappa_i);
  p.length = length;
  p.chi_eff = chi_eff;
  p.intensity = intensity;
  return p;
}

double cross_term_factor(const PhaseMatchSolution& sol, CrossTerm form) {
  if (form == CrossTerm::derived) {
    return std::sqrt(sol.omega_s * sol.n_i / (sol.omega_i * sol.n_s));
  }
  return std::sqrt(sol.omega_s * sol.n_s / (sol.omega_i * sol.n_i));
}

FieldTriple seed_fields(const VacuumSeed& seed, double pump_field) {
  return {cdouble(pump_field, 0.0), cdouble(seed.field_s, 0.0), cdouble(0.0, seed.field_i), 0.0};
}

FieldTriple propagate_upa(const FieldTriple& initial, double beta, const PhaseMatchSolution& sol,
                          double z) {
  const double ch = std::cosh(beta * z);
  const double sh = std::sinh(beta * z);
  const double ks = coupling_kappa(sol.omega_s, sol.n_s);
  const double ki = coupling_kappa(sol.omega_i, sol.n_i);
  const double r_s = std::sqrt(ks / ki);
  const cdouble j(0.0, 1.0);
  FieldTriple out;
  out.pump = initial.pump;
  out.signal = initial.signal * ch + j * r_s * std::conj(initial.idler) * sh;
  out.idler = initial.idler * ch + j * (1.0 / r_s) * std::conj(initial.signal) * sh;
  out.z = z;
  return out;
}

FieldTriple propagate_upa(const VacuumSeed& seed, double beta, const PhaseMatchSolution& sol,
                          double z, double pump_field) {
  return propagate_upa(seed_fields(seed, pump_field), beta, sol, z);
}

double scm_flux(const VacuumSeed& seed, double beta, const PhaseMatchSolution& sol, double length,
                CrossTerm form) {
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "crystal length must be > 0");
  const double bl = beta * length;
  const double sh_half = std::sinh(0.5 * bl);
  const double cosh_m1 = 2.0 * sh_half * sh_half;
  const double amp = seed.field_s * cosh_m1 + cross_term_factor(sol, form) * seed.field_i * std::sinh(bl);
  return eps0 * sol.n_s * c * seed.surface / (4.0 * hbar * sol.omega_s) * amp * amp;
}

double scm_flux_asymptotic(double intensity, const PhaseMatchSolution& sol, double chi_eff,
                           double length, AsymptoticBranch branch, bool enforce_regime) {
  if (intensity < 0.0) throw Error(ErrorCode::NegativeIntensity, "pump intensity must be >= 0");
  const double bl = parametric_gain(intensity, sol, chi_eff) * length;
  const double abs_alpha = std::abs(sol.alpha);
  if (branch == AsymptoticBranch::linear) {
    if (enforce_regime && bl > 1.0) {
      throw Error(ErrorCode::WrongRegime, "linear branch requested with beta L > 1");
    }
    return pi * chi_eff * chi_eff * intensity * length /
           (2.0 * eps0 * c * sol.n_s * sol.n_i * sol.n_p * sol.lambda_s * sol.lambda_s * abs_alpha);
  }
  if (enforce_regime && bl < 1.0) {
    throw Error(ErrorCode::WrongRegime, "exponential branch requested with beta L < 1");
  }
  return std::exp(2.0 * bl) / (4.0 * pi * abs_alpha * length);
}

double limit_intensity(const PhaseMatchSolution& sol, double chi_eff, double length) {
  const double ks = coupling_kappa(sol.omega_s, sol.n_s);
  const double ki = coupling_kappa(sol.omega_i, sol.n_i);
  return sol.n_p / (2.0 * mu0 * c * length * length * chi_eff * chi_eff * ki * ks);
}

double photon_flux(cdouble field, double index, double omega, double surface) {
  return eps0 * index * c * surface * std::norm(field) / (4.0 * hbar * omega);
}

// ---------------------------------------------------------------------------

namespace {

using State = Eigen::Vector3cd;  // (pump, signal, idler)

struct CoupledWaves {
  Eigen::Vector3d kappa_chi;

  State operator()(const State& e) const {
    const cdouble j(0.0, 1.0);
    State d;
    d(0) = j * kappa_chi(0) * e(1) * e(2);
    d(1) = j * kappa_chi(1) * e(0) * std::conj(e(2));
    d(2) = j * kappa_chi(2) * e(0) * std::conj(e(1));
    return d;
  }
};

struct RunResult {
  std::vector<FieldTriple> samples;
  State final_state;
};

RunResult run_rk4(const CoupledWaves& rhs, const State& start, double length, int steps,
                  int stride, bool record) {
  const double h = length / steps;
  State e = start;
  RunResult out;
  if (record) {
    out.samples.reserve(static_cast<std::size_t>(steps / stride + 2));
    out.samples.push_back({e(0), e(1), e(2), 0.0});
  }
  for (int n = 0; n < steps; ++n) {
    const State k1 = rhs(e);
    const State k2 = rhs(e + 0.5 * h * k1);
    const State k3 = rhs(e + 0.5 * h * k2);
    const State k4 = rhs(e + h * k3);
    e += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (record && ((n + 1) % stride == 0 || n + 1 == steps)) {
      out.samples.push_back({e(0), e(1), e(2), length * (n + 1) / steps});
    }
  }
  out.final_state = e;
  return out;
}

// Changes below the rounding accumulated on the starting amplitude over the
// run are noise; `floor` is that level relative to |start|.
double relative_change(cdouble a, cdouble b, cdouble start, double floor) {
  const double scale = std::max({std::abs(a), std::abs(b), floor * std::abs(start)});
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

Trajectory integrate_full_system(const FieldTriple& initial, const PhaseMatchSolution& sol,
                                 double chi_eff, double length, const OdeOptions& options) {
  if (options.steps < 1) throw Error(ErrorCode::StepCountTooSmall, "need at least one step");
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "crystal length must be > 0");
  if (!std::isfinite(std::abs(initial.pump)) || !std::isfinite(std::abs(initial.signal)) ||
      !std::isfinite(std::abs(initial.idler))) {
    throw Error(ErrorCode::InvalidArgument, "initial fields must be finite");
  }
  const CoupledWaves rhs{Eigen::Vector3d(coupling_kappa(sol.omega_p, sol.n_p) * chi_eff,
                                         coupling_kappa(sol.omega_s, sol.n_s) * chi_eff,
                                         coupling_kappa(sol.omega_i, sol.n_i) * chi_eff)};
  const State start(initial.pump, initial.signal, initial.idler);
  const int stride = std::max(1, options.record_stride);

  auto coarse = run_rk4(rhs, start, length, options.steps, stride, true);

  Trajectory traj;
  traj.steps = options.steps;
  if (options.check_convergence) {
    const auto fine = run_rk4(rhs, start, length, 2 * options.steps, 1, false);
    // generated parts, so a large seed or pump cannot hide a poor step size
    const State a = coarse.final_state - start;
    const State b = fine.final_state - start;
    const double floor = 4.0 * options.steps * std::numeric_limits<double>::epsilon() /
                         options.convergence_tolerance;
    double change = 0.0;
    for (int k = 0; k < 3; ++k) {
      change = std::max(change, relative_change(a(k), b(k), start(k), floor));
    }
    traj.convergence_change = change;
    if (change > options.convergence_tolerance) {
      throw Error(ErrorCode::StepCountTooSmall,
                  "step halving changed the generated fields by " + std::to_string(change));
    }
  }
  traj.samples = std::move(coarse.samples);
  return traj;
}

ManleyRoweResidual manley_rowe_residual(const Trajectory& traj, const PhaseMatchSolution& sol) {
  ManleyRoweResidual r;
  if (traj.samples.empty()) return r;
  auto ps = [&](const FieldTriple& f) { return sol.n_s * std::norm(f.signal) / sol.omega_s; };
  auto pi_ = [&](const FieldTriple& f) { return sol.n_i * std::norm(f.idler) / sol.omega_i; };
  auto pp = [&](const FieldTriple& f) { return sol.n_p * std::norm(f.pump) / sol.omega_p; };
  const auto& first = traj.samples.front();
  const double m0 = ps(first) - pi_(first);
  const double q0 = pp(first) + ps(first);
  for (const auto& f : traj.samples) {
    const double scale = ps(f) + pi_(f);
    if (scale > 0.0) r.signal_idler = std::max(r.signal_idler, std::abs(ps(f) - pi_(f) - m0) / scale);
    if (q0 > 0.0) r.pump_signal = std::max(r.pump_signal, std::abs(pp(f) + ps(f) - q0) / q0);
  }
  return r;
}

double pump_depletion(const Trajectory& traj) {
  if (traj.samples.empty()) return 0.0;
  const double p0 = std::norm(traj.samples.front().pump);
  if (p0 == 0.0) return 0.0;
  return 1.0 - std::norm(traj.samples.back().pump) / p0;
}

OdeFlux scm_ode_flux(const VacuumSeed& seed, double intensity, const PhaseMatchSolution& sol,
                     double chi_eff, double length, const OdeOptions& options) {
  const FieldTriple start = seed_fields(seed, pump_field_amplitude(intensity, sol.n_p));
  OdeOptions opts = options;
  opts.record_stride = std::max(opts.record_stride, opts.steps / 100);
  const auto traj = integrate_full_system(start, sol, chi_eff, length, opts);
  const auto& end = traj.samples.back();

  OdeFlux out;
  out.flux = photon_flux(end.signal - start.signal, sol.n_s, sol.omega_s, seed.surface);
  out.signal_photons = photon_flux(end.signal, sol.n_s, sol.omega_s, seed.surface) -
                       photon_flux(start.signal, sol.n_s, sol.omega_s, seed.surface);
  out.idler_photons = photon_flux(end.idler, sol.n_i, sol.omega_i, seed.surface) -
                      photon_flux(start.idler, sol.n_i, sol.omega_i, seed.surface);
  out.depletion = pump_depletion(traj);
  out.manley_rowe = manley_rowe_residual(traj, sol);
  return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  auto num = [&out](double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, end - buf);
  };
  out << "z_m,abs_E_p,abs_E_s,abs_E_i\n";
  for (const auto& f : traj.samples) {
    num(f.z);
    out << ',';
    num(std::abs(f.pump));
    out << ',';
    num(std::abs(f.signal));
    out << ',';
    num(std::abs(f.idler));
    out << '\n';
  }
}

}  // namespace spdc
