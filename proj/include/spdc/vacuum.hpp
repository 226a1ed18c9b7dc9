#pragma once

#include <optional>

#include "spdc/phasematch.hpp"

namespace spdc {

/// Which acceptance width is handed to the vacuum-field integral as its
/// bandwidth. `hz` takes Delta nu_acc = 4/(|alpha| L) numerically (the
/// pairing under which the closed-form flux reproduces its own asymptotes);
/// `rad` takes Delta omega_acc = 2 pi Delta nu_acc.
enum class SeedBandwidth { hz, rad };

/// RMS vacuum field over a band of width `bandwidth` centred on omega:
///   sqrt( hbar omega bandwidth / (4 pi c eps0 n S) )
double vacuum_field_rms(double omega, double index, double surface, double bandwidth);

struct VacuumSeed {
  double field_s = 0;   // V/m
  double field_i = 0;   // V/m
  double omega_s = 0;   // rad/s
  double omega_i = 0;   // rad/s
  double surface = 0;   // m^2
  double bandwidth = 0; // value used in the integral (Hz or rad/s per `convention`)
  SeedBandwidth convention = SeedBandwidth::hz;
  bool calibrated = false;  // true when a fixed override replaced the computed fields
};

/// Signal and idler seeds, each at its own frequency and index, sharing the
/// bandwidth and surface. `field_override` (V/m) replaces both amplitudes.
VacuumSeed build_vacuum_seed(const PhaseMatchSolution& sol, double surface,
                             SeedBandwidth convention = SeedBandwidth::hz,
                             std::optional<double> field_override = {});

}  // namespace spdc
