#include "spdc/phasematch.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "spdc/constants.hpp"
#include "spdc/error.hpp"

namespace spdc {

using constants::c;
using constants::pi;

double PumpDefinition::omega() const { return angular_frequency(wavelength); }

double PhaseMatchSolution::nu_s() const { return omega_s / (2.0 * pi); }

double PhaseMatchSolution::delta_n_g() const { return std::abs(n_gs - n_gi); }

Interaction make_interaction(const CrystalDefinition& crystal, const PumpDefinition& pump,
                             Axis signal, Axis idler) {
  if (!(pump.wavelength > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "pump wavelength must be positive");
  }
  Interaction setup{pump, crystal.axis(pump.polarization), crystal.axis(signal),
                    crystal.axis(idler)};
  if (!setup.pump_axis.contains(pump.wavelength)) {
    // surfaces the standard range error
    refractive_index(setup.pump_axis, pump.wavelength);
  }
  return setup;
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double delta_k(const Interaction& setup, double omega_s) {
  const double omega_p = setup.pump.omega();
  if (!(omega_s > 0.0 && omega_s < omega_p)) {
    throw Error(ErrorCode::InvalidArgument, "signal frequency must lie in (0, omega_p)");
  }
  const double omega_i = omega_p - omega_s;
  const double n_p = refractive_index(setup.pump_axis, setup.pump.wavelength);
  const double n_s = refractive_index(setup.signal_axis, wavelength_of(omega_s));
  const double n_i = refractive_index(setup.idler_axis, wavelength_of(omega_i));
  return (omega_p * n_p - omega_s * n_s - omega_i * n_i) / c;
}

WavelengthBracket default_signal_bracket(const PumpDefinition& pump) {
  return {1.5 * pump.wavelength, 2.5 * pump.wavelength};
}

double acceptance_slope(double n_gs, double n_gi) { return 2.0 * pi * (n_gi - n_gs) / c; }

double acceptance_slope(const Interaction& setup, double omega_s) {
  const double omega_i = setup.pump.omega() - omega_s;
  return acceptance_slope(group_index(setup.signal_axis, wavelength_of(omega_s)),
                          group_index(setup.idler_axis, wavelength_of(omega_i)));
}

SpectralAcceptance spectral_acceptance(double alpha, double length) {
  if (alpha == 0.0) {
    throw Error(ErrorCode::DegenerateAcceptance, "alpha = 0, acceptance is unbounded");
  }
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "crystal length must be > 0");
  const double dnu = 4.0 / (std::abs(alpha) * length);
  return {dnu, 2.0 * pi * dnu};
}

namespace {

struct Root {
  double omega;
  double residual;
  int iterations;
};

// Safeguarded secant on a bracketed sign change (falls back to bisection
// whenever the secant step leaves the bracket or stalls).
template <typename F>
Root bracketed_root(F&& f, double a, double fa, double b, double fb) {
  constexpr double kStop = 1e-9;  // rad/m, well below the acceptance tolerance
  double bisect_width = b - a;
  for (int it = 1; it <= kPhaseMatchMaxIterations; ++it) {
    double x = b - fb * (b - a) / (fb - fa);
    const double width = b - a;
    if (!(x > a && x < b) || width > 0.5 * bisect_width) {
      x = 0.5 * (a + b);
      bisect_width = width;
    }
    const double fx = f(x);
    if (std::abs(fx) < kStop || width <= 4.0 * std::numeric_limits<double>::epsilon() * b) {
      return {x, fx, it};
    }
    if ((fx < 0.0) == (fa < 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
  }
  throw Error(ErrorCode::MaxIterationsExceeded, "phase-matching root did not converge");
}

}  // namespace

PhaseMatchSolution solve_phase_matching(const Interaction& setup, double length,
                                        std::optional<WavelengthBracket> bracket) {
  const auto br = bracket.value_or(default_signal_bracket(setup.pump));
  const double omega_p = setup.pump.omega();
  double lo = angular_frequency(std::max(br.lambda_a, br.lambda_b));
  double hi = angular_frequency(std::min(br.lambda_a, br.lambda_b));
  if (!(lo > 0.0 && hi < omega_p && lo < hi)) {
    throw Error(ErrorCode::NoRootInBracket, "signal bracket must lie strictly below omega_p");
  }

  auto f = [&](double w) { return delta_k(setup, w); };

  constexpr int kScan = 64;
  std::array<double, kScan + 1> grid{};
  std::array<double, kScan + 1> values{};
  for (int k = 0; k <= kScan; ++k) {
    grid[k] = lo + (hi - lo) * k / kScan;
    values[k] = f(grid[k]);
  }
  int changes = 0;
  int at = -1;
  for (int k = 0; k < kScan; ++k) {
    if (values[k] == 0.0 || (values[k] < 0.0) != (values[k + 1] < 0.0)) {
      ++changes;
      at = k;
      if (values[k + 1] == 0.0) ++k;  // exact zero on a node counts once
    }
  }
  if (changes == 0) {
    throw Error(ErrorCode::NoRootInBracket, "delta k has no sign change in the signal bracket");
  }
  if (changes > 1) {
    std::ostringstream os;
    os << changes << " sign changes of delta k in the signal bracket";
    throw Error(ErrorCode::MultipleRoots, os.str());
  }

  Root root = values[at] == 0.0
                  ? Root{grid[at], 0.0, 0}
                  : bracketed_root(f, grid[at], values[at], grid[at + 1], values[at + 1]);
  if (std::abs(root.residual) >= kPhaseMatchTolerance) {
    throw Error(ErrorCode::MaxIterationsExceeded, "phase-matching residual above tolerance");
  }

  PhaseMatchSolution s;
  // omega_i = omega_p - omega_s is exact when omega_s >= omega_p / 2 (Sterbenz);
  // otherwise re-derive omega_s from the larger idler so the sum stays exact.
  s.omega_p = omega_p;
  s.omega_s = root.omega;
  s.omega_i = omega_p - s.omega_s;
  if (s.omega_s < 0.5 * omega_p) s.omega_s = omega_p - s.omega_i;

  s.lambda_p = setup.pump.wavelength;
  s.lambda_s = wavelength_of(s.omega_s);
  s.lambda_i = wavelength_of(s.omega_i);
  s.n_p = refractive_index(setup.pump_axis, s.lambda_p);
  s.n_s = refractive_index(setup.signal_axis, s.lambda_s);
  s.n_i = refractive_index(setup.idler_axis, s.lambda_i);
  s.n_gs = group_index(setup.signal_axis, s.lambda_s);
  s.n_gi = group_index(setup.idler_axis, s.lambda_i);
  s.alpha = acceptance_slope(s.n_gs, s.n_gi);
  s.length = length;
  const auto acc = spectral_acceptance(s.alpha, length);
  s.delta_nu_acc = acc.delta_nu;
  s.delta_omega_acc = acc.delta_omega;
  s.residual = delta_k(setup, s.omega_s);
  s.iterations = root.iterations;
  return s;
}

}  // namespace spdc
