#include "spdc/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "spdc/error.hpp"

namespace spdc {

std::string_view to_string(Model m) {
  switch (m) {
    case Model::scm: return "scm";
    case Model::scm_ode: return "scm_ode";
    case Model::nmm: return "nmm";
    case Model::nhm: return "nhm";
  }
  return "?";
}

Model parse_model(std::string_view name) {
  for (Model m : {Model::scm, Model::scm_ode, Model::nmm, Model::nhm}) {
    if (to_string(m) == name) return m;
  }
  throw ValidationError("models", "unknown model '" + std::string(name) + "'");
}

std::vector<Model> parse_model_list(std::string_view text) {
  std::vector<Model> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.push_back(parse_model(item));
    pos = comma + 1;
  }
  return out;
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ValidationError("output.format", "expected csv or json, got '" + std::string(name) + "'");
}

namespace {

std::string_view to_string(SpectralMeasure m) {
  return m == SpectralMeasure::per_hz ? "per_hz" : "per_rad";
}
std::string_view to_string(SeedBandwidth b) { return b == SeedBandwidth::hz ? "hz" : "rad"; }
std::string_view to_string(CrossTerm t) { return t == CrossTerm::derived ? "derived" : "printed"; }
std::string_view to_string(NhmBranch b) {
  switch (b) {
    case NhmBranch::automatic: return "auto";
    case NhmBranch::linear: return "linear";
    case NhmBranch::exponential: return "exponential";
  }
  return "?";
}

class Reader {
 public:
  explicit Reader(std::string_view origin) : origin_(origin) {}

  std::string where(const YAML::Node& n) const {
    std::ostringstream os;
    os << origin_;
    if (!n.Mark().is_null()) os << ":" << n.Mark().line + 1;
    return os.str();
  }

  [[noreturn]] void fail(const YAML::Node& n, const std::string& msg) const {
    throw Error(ErrorCode::ParseError, where(n) + ": " + msg);
  }

  void only_keys(const YAML::Node& map, const std::string& prefix,
                 std::initializer_list<std::string_view> allowed) const {
    if (!map.IsMap()) fail(map, (prefix.empty() ? "top level" : prefix) + " must be a mapping");
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        const auto full = prefix.empty() ? key : prefix + "." + key;
        throw ValidationError(full, "unknown key (" + where(kv.first) + ")");
      }
    }
  }

  template <class T>
  void get(const YAML::Node& map, const char* key, const std::string& full, T& out) const {
    const YAML::Node n = map[key];
    if (!n) return;
    if (!n.IsScalar()) fail(n, full + " must be a scalar");
    try {
      out = n.as<T>();
    } catch (const YAML::Exception&) {
      fail(n, "bad value for " + full);
    }
  }

  std::string get_word(const YAML::Node& map, const char* key, const std::string& full,
                       std::string fallback) const {
    get(map, key, full, fallback);
    return fallback;
  }

 private:
  std::string origin_;
};

template <class E>
E pick(const std::string& full, const std::string& value,
       std::initializer_list<std::pair<std::string_view, E>> options) {
  for (const auto& [name, v] : options) {
    if (name == value) return v;
  }
  throw ValidationError(full, "unrecognised value '" + value + "'");
}

Axis axis_value(const std::string& full, const std::string& value) {
  try {
    return parse_axis(value);
  } catch (const Error&) {
    throw ValidationError(full, "expected x, y or z, got '" + value + "'");
  }
}

}  // namespace

void validate_config(const ExperimentConfig& cfg) {
  auto positive = [](const char* key, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(key, "must be a finite value > 0");
  };
  positive("crystal.length_m", cfg.crystal.length);
  positive("crystal.chi_eff_m_per_V", cfg.crystal.chi_eff);
  positive("crystal.surface_m2", cfg.crystal.surface);
  positive("pump.wavelength_m", cfg.pump.wavelength);
  positive("pump.sweep.imin_W_per_cm2", cfg.pump.sweep.imin);
  positive("pump.sweep.imax_W_per_cm2", cfg.pump.sweep.imax);
  if (!(cfg.pump.sweep.imin < cfg.pump.sweep.imax)) {
    throw ValidationError("pump.sweep.imin_W_per_cm2", "must be below imax_W_per_cm2");
  }
  if (cfg.pump.sweep.points < 2) throw ValidationError("pump.sweep.points", "must be >= 2");
  if (cfg.crystal.signal_axis == cfg.crystal.idler_axis) {
    throw ValidationError("crystal.idler_axis", "type II needs distinct signal and idler axes");
  }
  if (cfg.models.empty()) throw ValidationError("models", "must name at least one model");
  std::set<Model> seen;
  for (Model m : cfg.models) {
    if (!seen.insert(m).second) {
      throw ValidationError("models", "duplicate model '" + std::string(to_string(m)) + "'");
    }
  }
  if (cfg.conventions.seed_override) {
    positive("conventions.seed_override_V_per_m", *cfg.conventions.seed_override);
  }
  if (cfg.conventions.nhm_sigma_s) positive("conventions.nhm_sigma_s_m2", *cfg.conventions.nhm_sigma_s);
  if (cfg.numerics.ode_steps < 1) throw ValidationError("numerics.ode_steps", "must be >= 1");
  if (cfg.numerics.jobs < 1) throw ValidationError("numerics.jobs", "must be >= 1");
  if (cfg.crystal.file.empty()) throw ValidationError("crystal.file", "must not be empty");
}

ExperimentConfig parse_config(std::string_view text, std::string_view origin) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << origin << ":" << e.mark.line + 1 << ": " << e.msg;
    throw Error(ErrorCode::ParseError, os.str());
  }

  ExperimentConfig cfg;
  if (root.IsNull()) return cfg;
  Reader r(origin);
  r.only_keys(root, "", {"crystal", "pump", "models", "conventions", "numerics", "output"});

  if (const auto n = root["crystal"]) {
    r.only_keys(n, "crystal",
                {"file", "length_m", "chi_eff_m_per_V", "surface_m2", "signal_axis", "idler_axis"});
    auto& c = cfg.crystal;
    r.get(n, "file", "crystal.file", c.file);
    r.get(n, "length_m", "crystal.length_m", c.length);
    r.get(n, "chi_eff_m_per_V", "crystal.chi_eff_m_per_V", c.chi_eff);
    r.get(n, "surface_m2", "crystal.surface_m2", c.surface);
    c.signal_axis = axis_value("crystal.signal_axis",
                               r.get_word(n, "signal_axis", "crystal.signal_axis", "z"));
    c.idler_axis =
        axis_value("crystal.idler_axis", r.get_word(n, "idler_axis", "crystal.idler_axis", "y"));
  }

  if (const auto n = root["pump"]) {
    r.only_keys(n, "pump", {"wavelength_m", "polarization", "sweep"});
    r.get(n, "wavelength_m", "pump.wavelength_m", cfg.pump.wavelength);
    cfg.pump.polarization =
        axis_value("pump.polarization", r.get_word(n, "polarization", "pump.polarization", "y"));
    if (const auto s = n["sweep"]) {
      r.only_keys(s, "pump.sweep", {"imin_W_per_cm2", "imax_W_per_cm2", "points", "log_spacing"});
      auto& sw = cfg.pump.sweep;
      r.get(s, "imin_W_per_cm2", "pump.sweep.imin_W_per_cm2", sw.imin);
      r.get(s, "imax_W_per_cm2", "pump.sweep.imax_W_per_cm2", sw.imax);
      r.get(s, "points", "pump.sweep.points", sw.points);
      r.get(s, "log_spacing", "pump.sweep.log_spacing", sw.log_spacing);
    }
  }

  if (const auto n = root["models"]) {
    if (!n.IsSequence()) r.fail(n, "models must be a list");
    cfg.models.clear();
    for (const auto& item : n) {
      if (!item.IsScalar()) r.fail(item, "models entries must be names");
      cfg.models.push_back(parse_model(item.as<std::string>()));
    }
  }

  if (const auto n = root["conventions"]) {
    r.only_keys(n, "conventions",
                {"nmm_units", "seed_bandwidth", "seed_override_V_per_m", "cross_term",
                 "nhm_sigma_s_m2", "nhm_branch"});
    auto& cv = cfg.conventions;
    cv.nmm_units = pick<SpectralMeasure>(
        "conventions.nmm_units", r.get_word(n, "nmm_units", "conventions.nmm_units", "per_hz"),
        {{"per_hz", SpectralMeasure::per_hz}, {"per_rad", SpectralMeasure::per_rad}});
    cv.seed_bandwidth = pick<SeedBandwidth>(
        "conventions.seed_bandwidth",
        r.get_word(n, "seed_bandwidth", "conventions.seed_bandwidth", "hz"),
        {{"hz", SeedBandwidth::hz}, {"rad", SeedBandwidth::rad}});
    cv.cross_term = pick<CrossTerm>(
        "conventions.cross_term", r.get_word(n, "cross_term", "conventions.cross_term", "derived"),
        {{"derived", CrossTerm::derived}, {"printed", CrossTerm::printed}});
    cv.nhm_branch = pick<NhmBranch>(
        "conventions.nhm_branch", r.get_word(n, "nhm_branch", "conventions.nhm_branch", "auto"),
        {{"auto", NhmBranch::automatic},
         {"linear", NhmBranch::linear},
         {"exponential", NhmBranch::exponential}});
    if (n["seed_override_V_per_m"] && !n["seed_override_V_per_m"].IsNull()) {
      double v = 0;
      r.get(n, "seed_override_V_per_m", "conventions.seed_override_V_per_m", v);
      cv.seed_override = v;
    }
    if (n["nhm_sigma_s_m2"] && !n["nhm_sigma_s_m2"].IsNull()) {
      double v = 0;
      r.get(n, "nhm_sigma_s_m2", "conventions.nhm_sigma_s_m2", v);
      cv.nhm_sigma_s = v;
    }
  }

  if (const auto n = root["numerics"]) {
    r.only_keys(n, "numerics", {"ode_steps", "jobs"});
    r.get(n, "ode_steps", "numerics.ode_steps", cfg.numerics.ode_steps);
    r.get(n, "jobs", "numerics.jobs", cfg.numerics.jobs);
  }

  if (const auto n = root["output"]) {
    r.only_keys(n, "output", {"directory", "format"});
    r.get(n, "directory", "output.directory", cfg.output.directory);
    cfg.output.format = parse_output_format(r.get_word(n, "format", "output.format", "csv"));
  }

  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;

  out << YAML::Key << "crystal" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "file" << YAML::Value << YAML::DoubleQuoted << cfg.crystal.file;
  out << YAML::Key << "length_m" << YAML::Value << cfg.crystal.length;
  out << YAML::Key << "chi_eff_m_per_V" << YAML::Value << cfg.crystal.chi_eff;
  out << YAML::Key << "surface_m2" << YAML::Value << cfg.crystal.surface;
  out << YAML::Key << "signal_axis" << YAML::Value << std::string(to_string(cfg.crystal.signal_axis));
  out << YAML::Key << "idler_axis" << YAML::Value << std::string(to_string(cfg.crystal.idler_axis));
  out << YAML::EndMap;

  out << YAML::Key << "pump" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "wavelength_m" << YAML::Value << cfg.pump.wavelength;
  out << YAML::Key << "polarization" << YAML::Value
      << std::string(to_string(cfg.pump.polarization));
  out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "imin_W_per_cm2" << YAML::Value << cfg.pump.sweep.imin;
  out << YAML::Key << "imax_W_per_cm2" << YAML::Value << cfg.pump.sweep.imax;
  out << YAML::Key << "points" << YAML::Value << cfg.pump.sweep.points;
  out << YAML::Key << "log_spacing" << YAML::Value << cfg.pump.sweep.log_spacing;
  out << YAML::EndMap << YAML::EndMap;

  out << YAML::Key << "models" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (Model m : cfg.models) out << std::string(to_string(m));
  out << YAML::EndSeq;

  const auto& cv = cfg.conventions;
  out << YAML::Key << "conventions" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "nmm_units" << YAML::Value << std::string(to_string(cv.nmm_units));
  out << YAML::Key << "seed_bandwidth" << YAML::Value << std::string(to_string(cv.seed_bandwidth));
  if (cv.seed_override) out << YAML::Key << "seed_override_V_per_m" << YAML::Value << *cv.seed_override;
  out << YAML::Key << "cross_term" << YAML::Value << std::string(to_string(cv.cross_term));
  if (cv.nhm_sigma_s) out << YAML::Key << "nhm_sigma_s_m2" << YAML::Value << *cv.nhm_sigma_s;
  out << YAML::Key << "nhm_branch" << YAML::Value << std::string(to_string(cv.nhm_branch));
  out << YAML::EndMap;

  out << YAML::Key << "numerics" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "ode_steps" << YAML::Value << cfg.numerics.ode_steps;
  out << YAML::Key << "jobs" << YAML::Value << cfg.numerics.jobs;
  out << YAML::EndMap;

  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "directory" << YAML::Value << YAML::DoubleQuoted << cfg.output.directory;
  out << YAML::Key << "format" << YAML::Value << std::string(to_string(cfg.output.format));
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::vector<double> sweep_grid(const SweepConfig& sweep) {
  const int n = sweep.points;
  if (n < 1) throw ValidationError("pump.sweep.points", "must be >= 1");
  if (n == 1) return {sweep.imin};
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / (n - 1);
    grid[k] = sweep.log_spacing ? sweep.imin * std::pow(sweep.imax / sweep.imin, t)
                                : sweep.imin + t * (sweep.imax - sweep.imin);
  }
  grid.front() = sweep.imin;
  grid.back() = sweep.imax;
  return grid;
}

std::filesystem::path resolve_crystal_file(const CrystalConfig& crystal) {
  std::filesystem::path p(crystal.file);
  if (p.has_parent_path() || std::filesystem::exists(p)) return p;
  return data_file(crystal.file);
}

}  // namespace spdc
