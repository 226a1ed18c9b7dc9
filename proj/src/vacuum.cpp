#include "spdc/vacuum.hpp"

#include <cmath>

#include "spdc/constants.hpp"
#include "spdc/error.hpp"

namespace spdc {

double vacuum_field_rms(double omega, double index, double surface, double bandwidth) {
  if (!(surface > 0.0)) throw Error(ErrorCode::InvalidGeometry, "interaction surface must be > 0");
  if (!(omega > 0.0 && index > 0.0 && bandwidth > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "vacuum field needs omega, n, bandwidth > 0");
  }
  using namespace constants;
  return std::sqrt(hbar * omega * bandwidth / (4.0 * pi * c * eps0 * index * surface));
}

VacuumSeed build_vacuum_seed(const PhaseMatchSolution& sol, double surface,
                             SeedBandwidth convention, std::optional<double> field_override) {
  VacuumSeed seed;
  seed.omega_s = sol.omega_s;
  seed.omega_i = sol.omega_i;
  seed.surface = surface;
  seed.convention = convention;
  seed.bandwidth = convention == SeedBandwidth::hz ? sol.delta_nu_acc : sol.delta_omega_acc;
  if (field_override) {
    if (!(*field_override > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "seed override must be > 0 V/m");
    }
    if (!(surface > 0.0)) throw Error(ErrorCode::InvalidGeometry, "interaction surface must be > 0");
    seed.field_s = seed.field_i = *field_override;
    seed.calibrated = true;
  } else {
    seed.field_s = vacuum_field_rms(sol.omega_s, sol.n_s, surface, seed.bandwidth);
    seed.field_i = vacuum_field_rms(sol.omega_i, sol.n_i, surface, seed.bandwidth);
  }
  return seed;
}

}  // namespace spdc
