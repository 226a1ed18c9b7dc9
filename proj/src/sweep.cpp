#include "spdc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <sstream>
#include <thread>

#include "spdc/constants.hpp"
#include "spdc/error.hpp"

namespace spdc {

std::string_view to_string(Regime r) { return r == Regime::linear ? "linear" : "exponential"; }

double quantum_efficiency(double flux, double intensity, double surface, double lambda_p) {
  using namespace constants;
  if (!(intensity > 0.0)) throw Error(ErrorCode::InvalidArgument, "pump intensity must be > 0");
  if (!(surface > 0.0)) throw Error(ErrorCode::InvalidGeometry, "surface must be > 0");
  const double pump_photons = intensity * surface * lambda_p / (2.0 * pi * hbar * c);
  return flux / pump_photons;
}

Experiment::Experiment(const ExperimentConfig& cfg) : cfg_(cfg) {
  validate_config(cfg_);
  crystal_ = load_crystal_definition(resolve_crystal_file(cfg_.crystal));
  PumpDefinition pump{cfg_.pump.wavelength, cfg_.pump.polarization};
  setup_ = make_interaction(crystal_, pump, cfg_.crystal.signal_axis, cfg_.crystal.idler_axis);
  sol_ = solve_phase_matching(setup_, cfg_.crystal.length);
  seed_ = build_vacuum_seed(sol_, cfg_.crystal.surface, cfg_.conventions.seed_bandwidth,
                            cfg_.conventions.seed_override);
}

NhmGeometry Experiment::nhm_geometry() const {
  return {cfg_.crystal.surface, cfg_.conventions.nhm_sigma_s.value_or(cfg_.crystal.surface)};
}

double Experiment::limit_intensity() const {
  return spdc::limit_intensity(sol_, cfg_.crystal.chi_eff, cfg_.crystal.length);
}

double Experiment::flux(Model model, double intensity) const {
  const auto& cr = cfg_.crystal;
  switch (model) {
    case Model::scm: {
      const double beta = parametric_gain(intensity, sol_, cr.chi_eff);
      return scm_flux(seed_, beta, sol_, cr.length, cfg_.conventions.cross_term);
    }
    case Model::scm_ode: {
      OdeOptions opts;
      opts.steps = cfg_.numerics.ode_steps;
      return scm_ode_flux(seed_, intensity, sol_, cr.chi_eff, cr.length, opts).flux;
    }
    case Model::nmm: {
      NmmOptions opts;
      opts.measure = cfg_.conventions.nmm_units;
      return nmm_flux(setup_, sol_, intensity, cr.length, cr.chi_eff, opts);
    }
    case Model::nhm: {
      if (intensity == 0.0) return 0.0;
      NhmInputs in;
      in.chi_eff = cr.chi_eff;
      in.length = cr.length;
      in.geometry = nhm_geometry();
      in.branch = cfg_.conventions.nhm_branch;
      in.crossover = limit_intensity();
      return nhm_flux(intensity, cr.length, sol_, in);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown model");
}

FluxPoint Experiment::evaluate(Model model, double intensity_w_per_cm2) const {
  const double intensity = units::from_w_per_cm2(intensity_w_per_cm2);
  try {
    FluxPoint p;
    p.intensity = intensity_w_per_cm2;
    p.flux = flux(model, intensity);
    p.beta_l = parametric_gain(intensity, sol_, cfg_.crystal.chi_eff) * cfg_.crystal.length;
    p.regime = p.beta_l > 1.0 ? Regime::exponential : Regime::linear;
    p.quantum_efficiency =
        quantum_efficiency(p.flux, intensity, cfg_.crystal.surface, sol_.lambda_p);
    return p;
  } catch (const Error& e) {
    std::ostringstream os;
    os << e.detail() << " [model " << to_string(model) << ", I_p " << intensity_w_per_cm2
       << " W/cm^2]";
    throw Error(e.code(), os.str());
  }
}

std::vector<FluxCurve> run_sweep(const Experiment& exp, const std::vector<double>& intensities) {
  auto models = exp.config().models;
  std::sort(models.begin(), models.end(),
            [](Model a, Model b) { return to_string(a) < to_string(b); });
  std::vector<double> grid = intensities;
  std::sort(grid.begin(), grid.end());

  std::vector<FluxCurve> curves(models.size());
  for (std::size_t m = 0; m < models.size(); ++m) {
    curves[m].model = models[m];
    curves[m].points.resize(grid.size());
  }

  const std::size_t tasks = models.size() * grid.size();
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(tasks);
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      const std::size_t m = t / grid.size();
      const std::size_t k = t % grid.size();
      try {
        curves[m].points[k] = exp.evaluate(models[m], grid[k]);
      } catch (...) {
        failures[t] = std::current_exception();
      }
    }
  };

  const auto jobs = static_cast<std::size_t>(std::max(1, exp.config().numerics.jobs));
  const std::size_t threads = std::min(jobs, std::max<std::size_t>(tasks, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  // first failure in task order, so the reported error does not depend on scheduling
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return curves;
}

std::vector<FluxCurve> run_sweep(const ExperimentConfig& cfg) {
  Experiment exp(cfg);
  return run_sweep(exp, sweep_grid(cfg.pump.sweep));
}

}  // namespace spdc
