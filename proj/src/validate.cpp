#include "spdc/validate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "spdc/constants.hpp"
#include "spdc/error.hpp"

namespace spdc {

namespace {

std::string fmt(const char* label, double v) {
  std::ostringstream os;
  os.precision(4);
  os << label << "=" << v;
  return os.str();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Check phase_root(const Experiment& exp) {
  const auto& sol = exp.solution();
  const auto swapped = default_signal_bracket(exp.interaction().pump);
  const auto again = solve_phase_matching(exp.interaction(), sol.length,
                                          WavelengthBracket{swapped.lambda_b, swapped.lambda_a});
  const bool ok = std::abs(sol.residual) <= kPhaseMatchTolerance &&
                  std::abs(again.lambda_s - sol.lambda_s) <= 1e-9 * sol.lambda_s;
  return {"phase matching root", ok,
          fmt("lambda_s_nm", sol.lambda_s * 1e9) + " " + fmt("lambda_i_nm", sol.lambda_i * 1e9) +
              " " + fmt("residual", sol.residual)};
}

Check slope_routes(const Experiment& exp) {
  const auto& sol = exp.solution();
  const double h = 1e-4 * sol.omega_s;
  const double d = (delta_k(exp.interaction(), sol.omega_s + h) -
                    delta_k(exp.interaction(), sol.omega_s - h)) /
                   (2.0 * h);
  const double fd = d * 2.0 * constants::pi;  // per Hz
  const double r = rel(sol.alpha, fd);
  return {"acceptance slope: group index vs finite difference", r <= 0.01,
          fmt("alpha", sol.alpha) + " " + fmt("fd", fd) + " " + fmt("rel", r)};
}

Check closure(const Experiment& exp) {
  const auto& cr = exp.config().crystal;
  const double bl = parametric_gain(exp.limit_intensity(), exp.solution(), cr.chi_eff) * cr.length;
  return {"beta L = 1 at the limit intensity", std::abs(bl - 1.0) <= 1e-12,
          fmt("I_lim_W_per_cm2", units::to_w_per_cm2(exp.limit_intensity())) + " " +
              fmt("betaL-1", bl - 1.0)};
}

Check closed_form_vs_ode(const Experiment& exp, const std::vector<double>& grid) {
  const auto& cr = exp.config().crystal;
  OdeOptions opts;
  opts.steps = exp.config().numerics.ode_steps;
  double worst = 0, worst_mr = 0;
  int used = 0;
  for (double i_cm2 : grid) {
    const double intensity = units::from_w_per_cm2(i_cm2);
    const auto ode = scm_ode_flux(exp.seed(), intensity, exp.solution(), cr.chi_eff, cr.length, opts);
    worst_mr = std::max({worst_mr, ode.manley_rowe.signal_idler, ode.manley_rowe.pump_signal});
    if (ode.depletion >= 1e-3) continue;
    const double beta = parametric_gain(intensity, exp.solution(), cr.chi_eff);
    const double cf = scm_flux(exp.seed(), beta, exp.solution(), cr.length, CrossTerm::derived);
    worst = std::max(worst, rel(ode.flux, cf));
    ++used;
  }
  return {"closed form vs integration (depletion < 1e-3), Manley-Rowe drift",
          worst <= 0.01 && worst_mr <= 1e-6,
          fmt("points", used) + " " + fmt("max_rel", worst) + " " + fmt("max_mr", worst_mr)};
}

double closed_form_at(const Experiment& exp, double beta_l) {
  const auto& cr = exp.config().crystal;
  return scm_flux(exp.seed(), beta_l / cr.length, exp.solution(), cr.length,
                  exp.config().conventions.cross_term);
}

double intensity_for(const Experiment& exp, double beta_l) {
  return exp.limit_intensity() * beta_l * beta_l;
}

Check linear_asymptote(const Experiment& exp) {
  const auto& cr = exp.config().crystal;
  double worst = 0;
  for (double bl : {1e-4, 1e-3, 1e-2, 0.05}) {
    const double a = scm_flux_asymptotic(intensity_for(exp, bl), exp.solution(), cr.chi_eff,
                                         cr.length, AsymptoticBranch::linear);
    worst = std::max(worst, rel(a, closed_form_at(exp, bl)));
  }
  return {"linear asymptote within 3% for beta L <= 0.05", worst <= 0.03, fmt("max_rel", worst)};
}

Check exponential_asymptote(const Experiment& exp) {
  const auto& cr = exp.config().crystal;
  double worst = 0;
  for (double bl : {6.0, 8.0, 10.0, 15.0}) {
    const double a = scm_flux_asymptotic(intensity_for(exp, bl), exp.solution(), cr.chi_eff,
                                         cr.length, AsymptoticBranch::exponential);
    worst = std::max(worst, rel(a, closed_form_at(exp, bl)));
  }
  return {"exponential asymptote within 5% for beta L >= 6", worst <= 0.05, fmt("max_rel", worst)};
}

Check quantum_linear_ratio(const Experiment& exp) {
  const auto& cr = exp.config().crystal;
  const double intensity = units::from_w_per_cm2(2.4);
  const double a5 = nmm_flux_linear_limit(exp.solution(), intensity, cr.length, cr.chi_eff);
  const double lin = scm_flux_asymptotic(intensity, exp.solution(), cr.chi_eff, cr.length,
                                         AsymptoticBranch::linear);
  const double r = a5 / lin;
  return {"quantum linear limit = pi x semi-classical linear limit",
          std::abs(r / constants::pi - 1.0) <= 1e-9, fmt("ratio/pi-1", r / constants::pi - 1.0)};
}

Check monotone(const Experiment& exp, const std::vector<FluxCurve>& curves) {
  std::string bad;
  for (const auto& c : curves) {
    for (std::size_t k = 1; k < c.points.size(); ++k) {
      if (c.points[k].flux < c.points[k - 1].flux) {
        bad += std::string(to_string(c.model)) + "@" + std::to_string(c.points[k].intensity) + " ";
        break;
      }
    }
  }
  std::string zero;
  for (Model m : exp.config().models) {
    if (exp.flux(m, 0.0) != 0.0) zero += std::string(to_string(m)) + " ";
  }
  return {"flux monotone in intensity, zero at zero", bad.empty() && zero.empty(),
          bad.empty() && zero.empty() ? "all models" : "decrease: " + bad + " nonzero: " + zero};
}

Check sqrt_scaling(const Experiment& exp) {
  const auto& cr = exp.config().crystal;
  const auto geom = exp.nhm_geometry();
  double worst = 0;
  for (double i_cm2 : {1.0, 2.4, 6.6e3, 5.5e8, 3.7e9}) {
    const double i = units::from_w_per_cm2(i_cm2);
    const double b1 = parametric_gain(i, exp.solution(), cr.chi_eff);
    const double b4 = parametric_gain(4.0 * i, exp.solution(), cr.chi_eff);
    const double k1 = kappa_time(i, cr.chi_eff, exp.solution(), geom);
    const double k4 = kappa_time(4.0 * i, cr.chi_eff, exp.solution(), geom);
    worst = std::max({worst, std::abs(b4 / b1 - 2.0) / 2.0, std::abs(k4 / k1 - 2.0) / 2.0});
  }
  return {"beta and kappa_time scale as sqrt(I)", worst <= 4e-16, fmt("max_rel", worst)};
}

Check band_edge_continuity(const Experiment& exp) {
  const auto& cr = exp.config().crystal;
  const auto& setup = exp.interaction();
  const auto& sol = exp.solution();
  const double intensity = units::from_w_per_cm2(5.5e8);
  auto c2 = [&](double w) { return nmm_c2(setup, w, intensity, cr.chi_eff); };
  // walk out from phase matching to the first sign change, then bisect
  double lo = sol.omega_s, step = 2.0 * constants::pi * sol.delta_nu_acc;
  double hi = lo + step;
  while (c2(hi) > 0.0) {
    lo = hi;
    hi += step;
  }
  for (int k = 0; k < 200 && hi - lo > 1e-9 * sol.omega_s * 1e-6; ++k) {
    const double mid = 0.5 * (lo + hi);
    (c2(mid) > 0.0 ? lo : hi) = mid;
  }
  const double a = nmm_density(setup, lo, cr.length, intensity, cr.chi_eff);
  const double b = nmm_density(setup, hi, cr.length, intensity, cr.chi_eff);
  const double r = rel(a, b);
  return {"quantum density continuous across C2 = 0", r <= 1e-6,
          fmt("edge_detuning_Hz", (0.5 * (lo + hi) - sol.omega_s) / (2.0 * constants::pi)) + " " +
              fmt("rel", r)};
}

Check overlap_bounds(const ValidationOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> decade(-12.0, -4.0);
  double lo = 1.0, hi = 0.0;
  for (int k = 0; k < opts.random_geometries; ++k) {
    const double f = overlap_factor(std::pow(10.0, decade(rng)), std::pow(10.0, decade(rng)));
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  return {"overlap factor in (0, 1/4]", lo > 0.0 && hi <= 0.25,
          fmt("min", lo) + " " + fmt("max", hi)};
}

}  // namespace

std::vector<Check> run_validation(const Experiment& exp, const ValidationOptions& opts) {
  const auto grid = sweep_grid(exp.config().pump.sweep);
  const auto curves = run_sweep(exp, grid);
  std::vector<Check> out;
  out.push_back(phase_root(exp));
  out.push_back(slope_routes(exp));
  out.push_back(closure(exp));
  out.push_back(closed_form_vs_ode(exp, grid));
  out.push_back(linear_asymptote(exp));
  out.push_back(exponential_asymptote(exp));
  out.push_back(quantum_linear_ratio(exp));
  out.push_back(monotone(exp, curves));
  out.push_back(sqrt_scaling(exp));
  out.push_back(band_edge_continuity(exp));
  out.push_back(overlap_bounds(opts));
  return out;
}

void print_checks(std::ostream& out, const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  " << c.detail << "\n";
  }
}

}  // namespace spdc
