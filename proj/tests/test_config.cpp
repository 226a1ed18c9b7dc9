#include <doctest.h>

#include <cmath>
#include <random>

#include "spdc/config.hpp"
#include "spdc/error.hpp"

using namespace spdc;

namespace {

std::string key_of(const char* text) {
  try {
    parse_config(text, "test.yaml");
  } catch (const ValidationError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST_CASE("empty file gives the KTP setup") {
  for (const char* text : {"", "\n", "# nothing here\n"}) {
    const auto cfg = parse_config(text);
    CHECK(cfg == ExperimentConfig{});
    CHECK(cfg.pump.wavelength == 532e-9);
    CHECK(cfg.crystal.length == 0.01);
    CHECK(cfg.crystal.chi_eff == 5.3e-12);
    CHECK(cfg.crystal.surface == 2.5e-8);
    CHECK(cfg.pump.polarization == Axis::y);
    CHECK(cfg.crystal.signal_axis == Axis::z);
    CHECK(cfg.crystal.idler_axis == Axis::y);
    CHECK(cfg.models.size() == 4);
  }
}

TEST_CASE("explicit values are read") {
  const auto cfg = parse_config(R"(
crystal:
  length_m: 0.02
  chi_eff_m_per_V: 1.59e-11   # gamma = 3 calibration
pump:
  sweep: {imin_W_per_cm2: 10, imax_W_per_cm2: 1e9, points: 7, log_spacing: false}
models: [scm, nhm]
conventions:
  nmm_units: per_rad
  seed_bandwidth: rad
  seed_override_V_per_m: 62.5
  cross_term: printed
  nhm_sigma_s_m2: 1e-8
  nhm_branch: linear
numerics: {ode_steps: 2000, jobs: 3}
output: {directory: out, format: json}
)");
  CHECK(cfg.crystal.length == 0.02);
  CHECK(cfg.crystal.chi_eff == 1.59e-11);
  CHECK(cfg.pump.sweep.points == 7);
  CHECK_FALSE(cfg.pump.sweep.log_spacing);
  CHECK(cfg.models == std::vector<Model>{Model::scm, Model::nhm});
  CHECK(cfg.conventions.nmm_units == SpectralMeasure::per_rad);
  CHECK(cfg.conventions.seed_bandwidth == SeedBandwidth::rad);
  CHECK(cfg.conventions.seed_override == 62.5);
  CHECK(cfg.conventions.cross_term == CrossTerm::printed);
  CHECK(cfg.conventions.nhm_sigma_s == 1e-8);
  CHECK(cfg.conventions.nhm_branch == NhmBranch::linear);
  CHECK(cfg.numerics.jobs == 3);
  CHECK(cfg.output.format == OutputFormat::json);
}

TEST_CASE("validation names the offending key") {
  CHECK(key_of("crystal: {length_m: -0.01}\n") == "crystal.length_m");
  CHECK(key_of("crystal: {surface_m2: 0}\n") == "crystal.surface_m2");
  CHECK(key_of("pump: {sweep: {points: 1}}\n") == "pump.sweep.points");
  CHECK(key_of("pump: {sweep: {imin_W_per_cm2: 10, imax_W_per_cm2: 5}}\n") ==
        "pump.sweep.imin_W_per_cm2");
  CHECK(key_of("models: []\n") == "models");
  CHECK(key_of("models: [scm, scm]\n") == "models");
  CHECK(key_of("models: [spdc]\n") == "models");
  CHECK(key_of("crystal: {colour: red}\n") == "crystal.colour");
  CHECK(key_of("extras: 1\n") == "extras");
  CHECK(key_of("conventions: {nmm_units: per_fortnight}\n") == "conventions.nmm_units");
  CHECK(key_of("output: {format: xml}\n") == "output.format");
  CHECK(key_of("numerics: {jobs: 0}\n") == "numerics.jobs");
}

TEST_CASE("unknown key message carries the line") {
  try {
    parse_config("crystal:\n  length_m: 0.01\n  colour: red\n", "cfg.yaml");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("cfg.yaml:3") != std::string::npos);
  }
}

TEST_CASE("malformed input is a ParseError with location") {
  for (const char* text : {"crystal: [1, 2\n", "crystal:\n  length_m: abc\n", "- a\n- b\n"}) {
    try {
      parse_config(text, "cfg.yaml");
      FAIL("expected ParseError");
    } catch (const ValidationError&) {
      FAIL("expected ParseError, got ValidationError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find("cfg.yaml:") != std::string::npos);
    }
  }
}

TEST_CASE("serialize then parse gives an equal config") {
  CHECK(parse_config(serialize_config(ExperimentConfig{})) == ExperimentConfig{});

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    ExperimentConfig cfg;
    cfg.crystal.length = 1e-3 + u(rng) * 0.05;
    cfg.crystal.chi_eff = u(rng) * 1e-11 + 1e-13;
    cfg.crystal.surface = std::pow(10.0, -9.0 + 3.0 * u(rng));
    cfg.pump.wavelength = (400.0 + 300.0 * u(rng)) * 1e-9;
    cfg.pump.sweep.imin = std::pow(10.0, 6.0 * u(rng));
    cfg.pump.sweep.imax = cfg.pump.sweep.imin * (1.0 + 1e6 * u(rng));
    cfg.pump.sweep.points = 2 + static_cast<int>(u(rng) * 300);
    cfg.pump.sweep.log_spacing = u(rng) < 0.5;
    if (u(rng) < 0.5) cfg.conventions.seed_override = 100.0 * u(rng) + 1e-3;
    if (u(rng) < 0.5) cfg.conventions.nhm_sigma_s = u(rng) * 1e-7 + 1e-12;
    cfg.conventions.nmm_units = u(rng) < 0.5 ? SpectralMeasure::per_hz : SpectralMeasure::per_rad;
    cfg.models = u(rng) < 0.5 ? std::vector<Model>{Model::nmm}
                              : std::vector<Model>{Model::nhm, Model::scm_ode};
    cfg.output.directory = "runs/" + std::to_string(k);
    const auto text = serialize_config(cfg);
    CAPTURE(text);
    REQUIRE(parse_config(text) == cfg);
  }
}

TEST_CASE("sweep grid") {
  SweepConfig s;
  const auto g = sweep_grid(s);
  CHECK(g.size() == 100);
  CHECK(g.front() == 1.0);
  CHECK(g.back() == 1e10);
  for (std::size_t k = 1; k < g.size(); ++k) CHECK(g[k] / g[k - 1] == doctest::Approx(std::pow(1e10, 1.0 / 99)));
  s.log_spacing = false;
  s.imin = 0.5;
  s.imax = 2.5;
  s.points = 5;
  CHECK(sweep_grid(s) == std::vector<double>{0.5, 1.0, 1.5, 2.0, 2.5});
  s.points = 1;
  CHECK(sweep_grid(s) == std::vector<double>{0.5});
}

TEST_CASE("model list parsing") {
  CHECK(parse_model_list("scm, nmm") == std::vector<Model>{Model::scm, Model::nmm});
  CHECK(parse_model_list("scm_ode") == std::vector<Model>{Model::scm_ode});
  CHECK_THROWS_AS(parse_model_list("scm,bogus"), ValidationError);
}

TEST_CASE("crystal file resolution") {
  CHECK(std::filesystem::exists(resolve_crystal_file(CrystalConfig{})));
  CrystalConfig other;
  other.file = "/tmp/does/not/exist.yaml";
  CHECK(resolve_crystal_file(other) == std::filesystem::path(other.file));
}
