#include "spdc/nhm.hpp"

#include <cmath>

#include "spdc/constants.hpp"
#include "spdc/error.hpp"

namespace spdc {

using namespace constants;

double overlap_factor(double sigma_p, double sigma_s) {
  if (!(sigma_p > 0.0 && sigma_s > 0.0)) {
    throw Error(ErrorCode::InvalidGeometry, "transverse sections must be > 0");
  }
  // sigma_p^2 / (sigma_s^2 + 2 sigma_p^2) written in the ratio to stay finite
  const double r = sigma_s / sigma_p;
  const double f = 1.0 / (r * r + 2.0);
  return f * f;
}

double kappa_time(double intensity, double chi_eff, const PhaseMatchSolution& sol,
                  const NhmGeometry& geometry) {
  if (intensity < 0.0) throw Error(ErrorCode::NegativeIntensity, "pump intensity must be >= 0");
  const double ns2 = sol.n_s * sol.n_s;
  const double ni2 = sol.n_i * sol.n_i;
  const double k2 = pi * pi * chi_eff * chi_eff * overlap_factor(geometry) * intensity /
                    (4.0 * eps0 * c * ns2 * ni2 * sol.n_p * sol.lambda_p * sol.lambda_p);
  return std::sqrt(k2);
}

double nhm_flux(double intensity, double z, const PhaseMatchSolution& sol, const NhmInputs& in) {
  if (!(z > 0.0)) throw Error(ErrorCode::InvalidArgument, "propagation distance must be > 0");
  if (intensity < 0.0) throw Error(ErrorCode::NegativeIntensity, "pump intensity must be >= 0");
  NhmBranch branch = in.branch;
  if (branch == NhmBranch::automatic) {
    branch = intensity > in.crossover ? NhmBranch::exponential : NhmBranch::linear;
  }
  if (branch == NhmBranch::linear) {
    const double dng = sol.delta_n_g();
    if (dng == 0.0) {
      throw Error(ErrorCode::DegenerateGroupIndices, "n_gs == n_gi, linear branch is singular");
    }
    return 2.0 * in.chi_eff * in.chi_eff * sol.n_gs * sol.n_gi * overlap_factor(in.geometry) *
           intensity * z /
           (eps0 * sol.n_s * sol.n_s * sol.n_i * sol.n_i * sol.n_p * sol.lambda_s * sol.lambda_s *
            dng);
  }
  if (!(in.length > 0.0)) throw Error(ErrorCode::InvalidArgument, "crystal length must be > 0");
  const double k = kappa_time(intensity, in.chi_eff, sol, in.geometry);
  return c / (2.0 * in.length * sol.n_s) * std::exp(2.0 * k * z);
}

double pump_photons_in_crystal(double intensity, double surface, double lambda_p, double n_p,
                               double length) {
  return intensity * surface * lambda_p * n_p * length / (2.0 * hbar * c);
}

double nhm_sinh_form(double pump_photons, double coupling, double t) {
  if (t < 0.0) throw Error(ErrorCode::InvalidArgument, "time must be >= 0");
  const double s = std::sinh(std::sqrt(pump_photons) * std::abs(coupling) * t);
  return s * s;
}

double nhm_output_flux(double crystal_photons, double length, double n_s) {
  return c / (length * n_s) * crystal_photons;
}

}  // namespace spdc
