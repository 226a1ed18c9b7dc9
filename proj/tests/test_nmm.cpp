#include <doctest.h>

#include <cmath>
#include <sstream>

#include "spdc/constants.hpp"
#include "spdc/error.hpp"
#include "spdc/nmm.hpp"
#include "spdc/scm.hpp"

using namespace spdc;
using namespace spdc::constants;

namespace {

constexpr double kChi = 5.3e-12;
constexpr double kL = 0.01;

const Interaction& setup() {
  static const Interaction s = [] {
    const auto def = load_crystal_definition(data_file(kDefaultCrystalFile));
    return make_interaction(def, PumpDefinition{});
  }();
  return s;
}

const PhaseMatchSolution& sol() {
  static const PhaseMatchSolution s = solve_phase_matching(setup(), kL);
  return s;
}

double wcm2(double i) { return units::from_w_per_cm2(i); }

double n_signal(double w) { return refractive_index(setup().signal_axis, wavelength_of(w)); }
double n_idler(double w) { return refractive_index(setup().idler_axis, wavelength_of(w)); }

double omega_at(double detuning_hz) { return sol().omega_s + 2.0 * pi * detuning_hz; }

// first detuning above phase matching where C2 turns negative, by bisection
double c2_root(double intensity) {
  auto c2 = [&](double d) { return nmm_c2(setup(), omega_at(d), intensity, kChi); };
  double lo = 0.0, hi = sol().delta_nu_acc;
  while (c2(hi) > 0.0) hi *= 2.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (c2(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("f2 at phase matching") {
  const double f = nmm_f2(setup(), sol().omega_s);
  CHECK(f == doctest::Approx(6.9e6).epsilon(0.05));
  const double by_hand = std::sqrt(sol().omega_s * sol().omega_i /
                                   (16.0 * pi * eps0 * c * c * c * sol().n_p * sol().n_s *
                                    sol().n_i));
  CHECK(f == doctest::Approx(by_hand).epsilon(1e-12));
}

TEST_CASE("f2 symmetry under signal/idler exchange up to the index swap") {
  const double wp = setup().pump.omega();
  for (double d : {-5e12, -1e12, 0.0, 3e12}) {
    const double w = omega_at(d);
    const double a = nmm_f2(setup(), w);
    const double b = nmm_f2(setup(), wp - w);
    const double lhs = a * a * n_signal(w) * n_idler(wp - w);
    const double rhs = b * b * n_signal(wp - w) * n_idler(w);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
  CHECK_THROWS_AS(nmm_f2(setup(), 0.0), Error);
}

TEST_CASE("C2 sign") {
  CHECK(nmm_c2(setup(), sol().omega_s, 1.0, kChi) > 0.0);
  CHECK(nmm_c2(setup(), omega_at(1e12), 0.0, kChi) < 0.0);
  CHECK_THROWS_AS(nmm_c2(setup(), sol().omega_s, -1.0, kChi), Error);
}

TEST_CASE("gain-band edge sits at the strong bandwidth") {
  for (double i_cm2 : {1e6, 5.5e8, 3.7e9}) {
    CAPTURE(i_cm2);
    const double i = wcm2(i_cm2);
    const double edge = c2_root(i);
    const double strong = strong_bandwidth(setup(), sol(), i, kChi);
    CHECK(edge == doctest::Approx(strong).epsilon(0.1));
  }
}

TEST_CASE("strong bandwidth scaling") {
  const double a = strong_bandwidth(setup(), sol(), wcm2(1e8), kChi);
  CHECK(strong_bandwidth(setup(), sol(), wcm2(4e8), kChi) == doctest::Approx(2.0 * a));
  CHECK(strong_bandwidth(setup(), sol(), 0.0, kChi) == 0.0);
}

TEST_CASE("density continuity across C2 = 0") {
  const double i = wcm2(5.5e8);
  const double edge = c2_root(i);
  for (double eps : {1e-3, 1e-6, 1e-9}) {
    const double inside = nmm_density(setup(), omega_at(edge * (1.0 - eps)), kL, i, kChi);
    const double outside = nmm_density(setup(), omega_at(edge * (1.0 + eps)), kL, i, kChi);
    CHECK(std::abs(inside - outside) / outside < 10.0 * eps + 1e-6);
  }
  const double at = nmm_density(setup(), omega_at(edge), kL, i, kChi);
  const double f = nmm_f2(setup(), omega_at(edge));
  CHECK(at == doctest::Approx(i * kChi * kChi * f * f * kL * kL).epsilon(1e-6));
}

TEST_CASE("density basics") {
  CHECK(nmm_density(setup(), sol().omega_s, 0.0, wcm2(1e8), kChi) == 0.0);
  for (double d : {-3e12, -1e11, 0.0, 2e11, 4e12}) {
    CHECK(nmm_density(setup(), omega_at(d), kL, wcm2(1e8), kChi) >= 0.0);
  }
}

TEST_CASE("large gain at phase matching grows as exp(f chi sqrt(8 pi I) Z) / (8 pi)") {
  const double i = wcm2(3.7e9);
  const double f = nmm_f2(setup(), sol().omega_s);
  const double arg = f * kChi * std::sqrt(8.0 * pi * i) * kL;
  REQUIRE(arg > 10.0);
  const double d = nmm_density(setup(), sol().omega_s, kL, i, kChi);
  CHECK(d * 8.0 * pi / std::exp(arg) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("idler density mirrors the signal density") {
  const double wp = setup().pump.omega();
  for (double d : {-2e12, 0.0, 5e11}) {
    const double w = omega_at(d);
    CHECK(nmm_idler_density(setup(), w, kL, wcm2(1e3), kChi) ==
          nmm_density(setup(), wp - w, kL, wcm2(1e3), kChi));
  }
}

TEST_CASE("quadrature against the printed linear-regime values") {
  const double low = nmm_flux(setup(), sol(), wcm2(2.4), kL, kChi);
  CHECK(low / 1.1e3 < 2.0);
  CHECK(low / 1.1e3 > 0.5);
  const double mid = nmm_flux(setup(), sol(), wcm2(6.6e3), kL, kChi);
  CHECK(mid / 2.7e6 < 2.0);
  CHECK(mid / 2.7e6 > 0.5);
}

TEST_CASE("linear regime: flux / (I Z) constant over three decades") {
  const double ref = nmm_flux(setup(), sol(), wcm2(1.0), kL, kChi) / (wcm2(1.0) * kL);
  for (double i_cm2 : {10.0, 100.0, 1000.0}) {
    const double r = nmm_flux(setup(), sol(), wcm2(i_cm2), kL, kChi) / (wcm2(i_cm2) * kL);
    CHECK(r == doctest::Approx(ref).epsilon(0.01));
  }
}

TEST_CASE("quadrature against the low-gain closed form") {
  // sinc^2 integrates to 2 pi / (|alpha| Z), so the quadrature carries 1/(lambda_s lambda_i)
  // where the closed form has 1/lambda_s^2
  for (double i_cm2 : {1.0, 2.4, 1e3}) {
    CAPTURE(i_cm2);
    const double i = wcm2(i_cm2);
    const double quad = nmm_flux(setup(), sol(), i, kL, kChi);
    const double quantum_lin = nmm_flux_linear_limit(sol(), i, kL, kChi);
    CHECK(quad * sol().lambda_i / sol().lambda_s == doctest::Approx(quantum_lin).epsilon(0.01));
  }
}

TEST_CASE("closed-form linear limit is pi times the semi-classical branch") {
  const double i = wcm2(2.4);
  const double quantum_lin = nmm_flux_linear_limit(sol(), i, kL, kChi);
  const double lin = scm_flux_asymptotic(i, sol(), kChi, kL, AsymptoticBranch::linear);
  CHECK(std::abs(quantum_lin / lin / pi - 1.0) <= 1e-9);
  CHECK(quantum_lin == doctest::Approx(1.1e3).epsilon(0.1));
}

TEST_CASE("measure convention") {
  NmmOptions rad;
  rad.measure = SpectralMeasure::per_rad;
  const double hz = nmm_flux(setup(), sol(), wcm2(6.6e3), kL, kChi);
  CHECK(nmm_flux(setup(), sol(), wcm2(6.6e3), kL, kChi, rad) == doctest::Approx(2.0 * pi * hz));
}

TEST_CASE("total flux monotone in intensity and length") {
  double prev = 0.0;
  for (int k = 0; k <= 20; ++k) {
    const double f = nmm_flux(setup(), sol(), wcm2(std::pow(10.0, 0.5 * k)), kL, kChi);
    CHECK(f > prev);
    prev = f;
  }
  CHECK(nmm_flux(setup(), sol(), wcm2(1e8), 2.0 * kL, kChi) >
        nmm_flux(setup(), sol(), wcm2(1e8), kL, kChi));
  CHECK(nmm_flux(setup(), sol(), 0.0, kL, kChi) == 0.0);
}

TEST_CASE("refinement tolerance is honoured") {
  NmmOptions tight;
  tight.tolerance = 1e-4;
  const double a = nmm_flux(setup(), sol(), wcm2(5.5e8), kL, kChi);
  const double b = nmm_flux(setup(), sol(), wcm2(5.5e8), kL, kChi, tight);
  CHECK(a == doctest::Approx(b).epsilon(5e-3));
  NmmOptions none;
  none.max_refinements = 0;
  CHECK_THROWS_AS(nmm_flux(setup(), sol(), wcm2(5.5e8), kL, kChi, none), Error);
}

TEST_CASE("spectrum dump") {
  const auto s = nmm_spectrum(setup(), sol(), wcm2(5.5e8), kL, kChi, 201);
  CHECK(s.detuning.size() == 201);
  CHECK((s.density >= 0.0).all());
  Eigen::Index peak = 0;
  s.density.maxCoeff(&peak);
  CHECK(std::abs(s.detuning(peak)) <= 2.0 * (s.detuning(1) - s.detuning(0)));
  std::ostringstream os;
  write_spectrum_csv(os, s);
  CHECK(os.str().rfind("detuning_Hz,density\n", 0) == 0);
}
