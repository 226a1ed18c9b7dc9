#include "spdc/nmm.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "spdc/constants.hpp"
#include "spdc/error.hpp"

namespace spdc {

using namespace constants;

double nmm_f2(const Interaction& setup, double omega) {
  const double omega_p = setup.pump.omega();
  if (!(omega > 0.0 && omega < omega_p)) {
    throw Error(ErrorCode::InvalidArgument, "signal frequency must lie in (0, omega_p)");
  }
  const double n_p = refractive_index(setup.pump_axis, setup.pump.wavelength);
  const double n_s = refractive_index(setup.signal_axis, wavelength_of(omega));
  const double n_i = refractive_index(setup.idler_axis, wavelength_of(omega_p - omega));
  return std::sqrt(omega * (omega_p - omega) / (16.0 * pi * eps0 * c * c * c * n_p * n_s * n_i));
}

double nmm_c2(const Interaction& setup, double omega, double intensity, double chi_eff) {
  if (intensity < 0.0) throw Error(ErrorCode::NegativeIntensity, "pump intensity must be >= 0");
  const double f = nmm_f2(setup, omega);
  const double dk = delta_k(setup, omega);
  return 2.0 * pi * f * f * intensity * chi_eff * chi_eff - 0.25 * dk * dk;
}

namespace {

// sinh^2(sqrt(u))/u for u > 0, sin^2(sqrt(-u))/(-u) for u < 0; analytic at 0.
double gain_shape(double u) {
  if (std::abs(u) < 1e-4) return 1.0 + u / 3.0 + 2.0 * u * u / 45.0;
  if (u > 0.0) {
    const double s = std::sinh(std::sqrt(u));
    return s * s / u;
  }
  const double s = std::sin(std::sqrt(-u));
  return s * s / -u;
}

double density_at(const Interaction& setup, double omega, double z, double intensity,
                  double chi_eff, double& f_out) {
  const double f = nmm_f2(setup, omega);
  const double dk = delta_k(setup, omega);
  const double c2 = 2.0 * pi * f * f * intensity * chi_eff * chi_eff - 0.25 * dk * dk;
  f_out = f;
  return intensity * chi_eff * chi_eff * f * f * z * z * gain_shape(c2 * z * z);
}

double measure_factor(SpectralMeasure m) { return m == SpectralMeasure::per_rad ? 2.0 * pi : 1.0; }

double half_window(const PhaseMatchSolution& sol, double strong, double z, const NmmOptions& o) {
  return o.window_acceptances * 4.0 / (std::abs(sol.alpha) * z) + 4.0 * strong;
}

}  // namespace

double nmm_density(const Interaction& setup, double omega, double z, double intensity,
                   double chi_eff) {
  if (intensity < 0.0) throw Error(ErrorCode::NegativeIntensity, "pump intensity must be >= 0");
  if (z < 0.0) throw Error(ErrorCode::InvalidArgument, "propagation distance must be >= 0");
  double f = 0.0;
  return density_at(setup, omega, z, intensity, chi_eff, f);
}

double nmm_idler_density(const Interaction& setup, double omega, double z, double intensity,
                         double chi_eff) {
  return nmm_density(setup, setup.pump.omega() - omega, z, intensity, chi_eff);
}

double strong_bandwidth(const Interaction& setup, const PhaseMatchSolution& sol,
                        double intensity, double chi_eff) {
  if (intensity < 0.0) throw Error(ErrorCode::NegativeIntensity, "pump intensity must be >= 0");
  return nmm_f2(setup, sol.omega_s) * chi_eff * std::sqrt(8.0 * pi * intensity) /
         std::abs(sol.alpha);
}

double nmm_flux(const Interaction& setup, const PhaseMatchSolution& sol, double intensity,
                double z, double chi_eff, const NmmOptions& options) {
  if (!(z > 0.0)) throw Error(ErrorCode::InvalidArgument, "propagation distance must be > 0");
  if (intensity < 0.0) throw Error(ErrorCode::NegativeIntensity, "pump intensity must be >= 0");
  if (intensity == 0.0) return 0.0;

  const double strong = strong_bandwidth(setup, sol, intensity, chi_eff);
  const double w = half_window(sol, strong, z, options);
  const double nu_s = sol.nu_s();
  if (!(nu_s - w > 0.0 && nu_s + w < sol.omega_p / (2.0 * pi))) {
    throw Error(ErrorCode::QuadratureNotConverged, "integration window leaves (0, nu_p)");
  }
  double f_unused = 0.0;
  auto g = [&](double detuning) {
    return density_at(setup, 2.0 * pi * (nu_s + detuning), z, intensity, chi_eff, f_unused);
  };

  auto simpson = [&](int n) {
    const double h = 2.0 * w / n;
    double sum = g(-w) + g(w);
    for (int k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * g(-w + k * h);
    return sum * h / 3.0;
  };

  int n = options.initial_intervals + options.initial_intervals % 2;
  double previous = simpson(n);
  double current = previous;
  bool converged = false;
  for (int r = 0; r < options.max_refinements; ++r) {
    n *= 2;
    current = simpson(n);
    if (std::abs(current - previous) <= options.tolerance * std::abs(current)) {
      converged = true;
      break;
    }
    previous = current;
  }
  if (!converged) {
    throw Error(ErrorCode::QuadratureNotConverged, "spectral integral did not settle");
  }

  if (options.tail_correction) {
    // beyond the window: density ~ 2 I chi^2 f2^2 / (alpha dnu)^2 on average
    const double f = nmm_f2(setup, sol.omega_s);
    current += 4.0 * intensity * chi_eff * chi_eff * f * f / (sol.alpha * sol.alpha * w);
  }
  return current * measure_factor(options.measure);
}

NmmSpectrum nmm_spectrum(const Interaction& setup, const PhaseMatchSolution& sol,
                         double intensity, double z, double chi_eff, int points,
                         const NmmOptions& options) {
  if (points < 2) throw Error(ErrorCode::InvalidArgument, "spectrum needs at least 2 points");
  NmmSpectrum s;
  s.measure = options.measure;
  s.strong_bandwidth = strong_bandwidth(setup, sol, intensity, chi_eff);
  s.total = nmm_flux(setup, sol, intensity, z, chi_eff, options);
  const double w = half_window(sol, s.strong_bandwidth, z, options);
  s.detuning = Eigen::ArrayXd::LinSpaced(points, -w, w);
  s.density.resize(points);
  for (Eigen::Index k = 0; k < s.detuning.size(); ++k) {
    const double omega = 2.0 * pi * (sol.nu_s() + s.detuning(k));
    s.density(k) = nmm_density(setup, omega, z, intensity, chi_eff);
  }
  s.intervals = points - 1;
  return s;
}

double nmm_flux_linear_limit(const PhaseMatchSolution& sol, double intensity, double z,
                             double chi_eff) {
  if (intensity < 0.0) throw Error(ErrorCode::NegativeIntensity, "pump intensity must be >= 0");
  return pi * pi * chi_eff * chi_eff * intensity * z /
         (2.0 * eps0 * c * sol.n_p * sol.n_s * sol.n_i * sol.lambda_s * sol.lambda_s *
          std::abs(sol.alpha));
}

void write_spectrum_csv(std::ostream& out, const NmmSpectrum& spectrum) {
  auto num = [&out](double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, end - buf);
  };
  out << "detuning_Hz,density\n";
  for (Eigen::Index k = 0; k < spectrum.detuning.size(); ++k) {
    num(spectrum.detuning(k));
    out << ',';
    num(spectrum.density(k));
    out << '\n';
  }
}

}  // namespace spdc
