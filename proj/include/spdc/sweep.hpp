#pragma once

#include <string_view>
#include <vector>

#include "spdc/config.hpp"

namespace spdc {

enum class Regime { linear, exponential };
std::string_view to_string(Regime r);

struct FluxPoint {
  double intensity = 0;           // W/cm^2
  double flux = 0;                // Hz
  double beta_l = 0;              // SCM gain-length product at this intensity
  Regime regime = Regime::linear; // exponential iff beta_l > 1, for every model
  double quantum_efficiency = 0;
};

struct FluxCurve {
  Model model = Model::scm;
  std::vector<FluxPoint> points;  // ascending intensity
};

/// N_twin / N_p with N_p = I S lambda_p / (2 pi hbar c); intensity in W/m^2.
double quantum_efficiency(double flux, double intensity, double surface, double lambda_p);

/// Everything derived once from a config: crystal, phase matching, vacuum seed.
class Experiment {
 public:
  explicit Experiment(const ExperimentConfig& cfg);

  const ExperimentConfig& config() const { return cfg_; }
  const CrystalDefinition& crystal() const { return crystal_; }
  const Interaction& interaction() const { return setup_; }
  const PhaseMatchSolution& solution() const { return sol_; }
  const VacuumSeed& seed() const { return seed_; }
  NhmGeometry nhm_geometry() const;
  double limit_intensity() const;  // W/m^2

  /// One model at one intensity (W/cm^2). Model errors come back annotated.
  FluxPoint evaluate(Model model, double intensity_w_per_cm2) const;
  double flux(Model model, double intensity_w_per_m2) const;

 private:
  ExperimentConfig cfg_;
  CrystalDefinition crystal_;
  Interaction setup_;
  PhaseMatchSolution sol_;
  VacuumSeed seed_;
};

/// Curves for every configured model, sorted by model name. Points run
/// concurrently on numerics.jobs threads; results land in fixed slots.
std::vector<FluxCurve> run_sweep(const Experiment& exp, const std::vector<double>& intensities);
std::vector<FluxCurve> run_sweep(const ExperimentConfig& cfg);

}  // namespace spdc
