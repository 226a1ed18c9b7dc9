#include <doctest.h>

#include <cmath>

#include "spdc/dispersion.hpp"
#include "spdc/error.hpp"

using namespace spdc;

namespace {

const CrystalDefinition& ktp() {
  static const CrystalDefinition def = load_crystal_definition(data_file(kDefaultCrystalFile));
  return def;
}

// Written out by hand from the shipped coefficients, lambda in um.
double ny_by_hand(double um) {
  const double l2 = um * um;
  return std::sqrt(3.0333 + 0.04154 / (l2 - 0.04547) - 0.01408 * l2);
}

double central_difference(const DispersionModel& m, double lambda, double h) {
  return (refractive_index(m, lambda + h) - refractive_index(m, lambda - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("shipped KTP file evaluates the published Sellmeier form") {
  const auto& y = ktp().axis(Axis::y);
  for (double um : {0.532, 0.8, 1.0, 1.0925, 2.0}) {
    CHECK(refractive_index(y, um * 1e-6) == doctest::Approx(ny_by_hand(um)).epsilon(1e-14));
  }
  // the ~1.7 index used for the vacuum-field estimate
  CHECK(refractive_index(y, 1037e-9) > 1.7);
  CHECK(refractive_index(y, 1037e-9) < 1.8);
}

TEST_CASE("y index decreases across 600-1100 nm") {
  const auto& y = ktp().axis(Axis::y);
  double prev = refractive_index(y, 600e-9);
  for (int k = 1; k <= 100; ++k) {
    const double n = refractive_index(y, (600.0 + 5.0 * k) * 1e-9);
    CHECK(n < prev);
    prev = n;
  }
}

TEST_CASE("analytic derivative matches central differences over the window") {
  for (Axis a : {Axis::x, Axis::y, Axis::z}) {
    const auto& m = ktp().axis(a);
    const double span = m.lambda_max - m.lambda_min;
    for (int k = 1; k < 128; ++k) {
      const double lambda = m.lambda_min + span * k / 128.0;
      const double h = 1e-4 * lambda;
      const double fd = central_difference(m, lambda, h);
      CHECK(index_derivative(m, lambda) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("finite difference step halving is stable against the analytic value") {
  const auto& z = ktp().axis(Axis::z);
  const double lambda = 1037e-9;
  const double d1 = central_difference(z, lambda, 1e-3 * lambda);
  const double d2 = central_difference(z, lambda, 0.5e-3 * lambda);
  const double richardson = (4.0 * d2 - d1) / 3.0;
  CHECK(std::abs(d2 - d1) / std::abs(d1) < 1e-5);
  CHECK(richardson == doctest::Approx(index_derivative(z, lambda)).epsilon(1e-8));
}

TEST_CASE("normal dispersion: negative slope, group index above phase index") {
  const auto& y = ktp().axis(Axis::y);
  const auto& z = ktp().axis(Axis::z);
  CHECK(index_derivative(y, 1092e-9) < 0.0);
  CHECK(group_index(z, 1037e-9) > refractive_index(z, 1037e-9));
  CHECK(group_index(y, 1092e-9) > refractive_index(y, 1092e-9));
  for (double lambda : {700e-9, 1037e-9, 1500e-9}) {
    const double chain = refractive_index(z, lambda) - lambda * index_derivative(z, lambda);
    CHECK(group_index(z, lambda) == chain);
  }
}

TEST_CASE("group-index difference of the twins backs out the published slope") {
  // alpha = 2 pi dn_g / c with alpha = 1.97e-9 gives dn_g ~ 0.094
  const double published = 1.97e-9 * 299792458.0 / (2.0 * M_PI);
  const double dng = group_index(ktp().axis(Axis::z), 1037e-9) -
                     group_index(ktp().axis(Axis::y), 1092e-9);
  CHECK(published == doctest::Approx(0.094).epsilon(0.01));
  CHECK(dng == doctest::Approx(published).epsilon(0.1));
}

TEST_CASE("dispersionless model has n_g == n") {
  DispersionModel flat;
  flat.constant = 2.25;
  flat.lambda_min = 400e-9;
  flat.lambda_max = 2000e-9;
  CHECK(refractive_index(flat, 1e-6) == doctest::Approx(1.5));
  CHECK(index_derivative(flat, 1e-6) == 0.0);
  CHECK(group_index(flat, 1e-6) == refractive_index(flat, 1e-6));
}

TEST_CASE("outside the transparency window is an error") {
  const auto& y = ktp().axis(Axis::y);
  for (double lambda : {300e-9, 5e-6}) {
    try {
      refractive_index(y, lambda);
      FAIL("expected OutOfTransparencyRange");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OutOfTransparencyRange);
    }
  }
  CHECK_THROWS_AS(index_derivative(y, 300e-9), Error);
  CHECK_THROWS_AS(group_index(y, 300e-9), Error);
}

TEST_CASE("crystal file parsing") {
  const char* good = R"(crystal: test
source: none
axes:
  y:
    validity_nm: [500, 2000]
    constant: 2.0
    poles: [[0.05, 0.04]]
    powers: [[-0.01, 1]]
)";
  const auto def = parse_crystal_definition(good, "good.yaml");
  CHECK(def.name == "test");
  REQUIRE(def.has_axis(Axis::y));
  CHECK_FALSE(def.has_axis(Axis::z));
  CHECK(def.axis(Axis::y).lambda_min == doctest::Approx(500e-9));
  CHECK(def.axis(Axis::y).poles.size() == 1);

  auto error_of = [](const char* text) -> std::string {
    try {
      parse_crystal_definition(text, "bad.yaml");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      return e.what();
    }
    return "";
  };

  SUBCASE("unknown key carries its line") {
    const auto msg = error_of("crystal: t\naxes:\n  y:\n    validity_nm: [500, 2000]\n"
                              "    constant: 2.0\n    colour: red\n");
    CHECK(msg.find("bad.yaml:6") != std::string::npos);
  }
  SUBCASE("pole inside the window") {
    const auto msg = error_of("crystal: t\naxes:\n  y:\n    validity_nm: [500, 2000]\n"
                              "    constant: 2.0\n    poles: [[0.1, 1.0]]\n");
    CHECK(msg.find("pole") != std::string::npos);
  }
  SUBCASE("index below one") {
    const auto msg = error_of("crystal: t\naxes:\n  y:\n    validity_nm: [500, 2000]\n"
                              "    constant: 0.5\n");
    CHECK(msg.find("n <= 1") != std::string::npos);
  }
  SUBCASE("missing constant") {
    CHECK_FALSE(error_of("crystal: t\naxes:\n  y:\n    validity_nm: [500, 2000]\n").empty());
  }
  SUBCASE("malformed yaml") { CHECK_FALSE(error_of("crystal: [unclosed\n").empty()); }
}

TEST_CASE("missing crystal file is an IoError") {
  try {
    load_crystal_definition("/nonexistent/crystal.yaml");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("both shipped coefficient sets load") {
  const auto k02 = load_crystal_definition(data_file("ktp_kato2002.yaml"));
  CHECK(k02.has_axis(Axis::y));
  CHECK(k02.has_axis(Axis::z));
  CHECK(refractive_index(k02.axis(Axis::y), 532e-9) ==
        doctest::Approx(refractive_index(ktp().axis(Axis::y), 532e-9)).epsilon(2e-3));
}
