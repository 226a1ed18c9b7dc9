#include "spdc/dispersion.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "spdc/constants.hpp"
#include "spdc/error.hpp"

namespace spdc {

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
  }
  return "?";
}

Axis parse_axis(std::string_view label) {
  if (label == "x") return Axis::x;
  if (label == "y") return Axis::y;
  if (label == "z") return Axis::z;
  throw Error(ErrorCode::InvalidArgument, "unknown axis '" + std::string(label) + "'");
}

const DispersionModel& CrystalDefinition::axis(Axis a) const {
  for (const auto& m : axes) {
    if (m.axis == a) return m;
  }
  throw Error(ErrorCode::InvalidArgument,
              "crystal '" + name + "' has no " + std::string(to_string(a)) + " axis");
}

bool CrystalDefinition::has_axis(Axis a) const {
  for (const auto& m : axes) {
    if (m.axis == a) return true;
  }
  return false;
}

namespace {

void require_in_range(const DispersionModel& model, double wavelength) {
  if (!model.contains(wavelength)) {
    std::ostringstream os;
    os << "lambda = " << wavelength / units::nm << " nm outside " << to_string(model.axis)
       << "-axis window [" << model.lambda_min / units::nm << ", "
       << model.lambda_max / units::nm << "] nm";
    throw Error(ErrorCode::OutOfTransparencyRange, os.str());
  }
}

double index_squared(const DispersionModel& m, double l2) {
  double n2 = m.constant;
  for (const auto& p : m.poles) n2 += p.strength / (l2 - p.resonance);
  for (const auto& q : m.powers) n2 += q.coefficient * std::pow(l2, q.exponent);
  return n2;
}

// d(n^2)/d(l2), l2 in um^2
double index_squared_slope(const DispersionModel& m, double l2) {
  double d = 0.0;
  for (const auto& p : m.poles) {
    const double den = l2 - p.resonance;
    d -= p.strength / (den * den);
  }
  for (const auto& q : m.powers) {
    if (q.exponent != 0) d += q.coefficient * q.exponent * std::pow(l2, q.exponent - 1);
  }
  return d;
}

}  // namespace

double refractive_index(const DispersionModel& model, double wavelength) {
  require_in_range(model, wavelength);
  const double l = wavelength / units::um;
  return std::sqrt(index_squared(model, l * l));
}

double index_derivative(const DispersionModel& model, double wavelength) {
  require_in_range(model, wavelength);
  const double l = wavelength / units::um;
  const double l2 = l * l;
  const double n = std::sqrt(index_squared(model, l2));
  // dn/dlambda[1/um] = (dn2/dl2) * 2 l / (2 n)
  const double per_um = index_squared_slope(model, l2) * l / n;
  return per_um / units::um;
}

double group_index(const DispersionModel& model, double wavelength) {
  return refractive_index(model, wavelength) - wavelength * index_derivative(model, wavelength);
}

// ---------------------------------------------------------------------------
// crystal-definition files

namespace {

[[noreturn]] void parse_fail(std::string_view origin, const YAML::Mark& mark,
                             const std::string& what) {
  std::ostringstream os;
  os << origin;
  if (!mark.is_null()) os << ":" << mark.line + 1;
  os << ": " << what;
  throw Error(ErrorCode::ParseError, os.str());
}

void reject_unknown_keys(const YAML::Node& node, const std::set<std::string>& allowed,
                         std::string_view origin, std::string_view where) {
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) {
      parse_fail(origin, kv.first.Mark(),
                 "unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
T scalar(const YAML::Node& node, std::string_view origin, const std::string& what) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    parse_fail(origin, node.Mark(), "bad value for " + what);
  }
}

DispersionModel parse_axis_block(Axis axis, const YAML::Node& node, std::string_view origin) {
  const std::string where = "axes." + std::string(to_string(axis));
  if (!node.IsMap()) parse_fail(origin, node.Mark(), where + " must be a mapping");
  reject_unknown_keys(node, {"validity_nm", "constant", "poles", "powers"}, origin, where);

  DispersionModel m;
  m.axis = axis;

  const auto validity = node["validity_nm"];
  if (!validity || !validity.IsSequence() || validity.size() != 2) {
    parse_fail(origin, node.Mark(), where + ".validity_nm must be [min, max]");
  }
  m.lambda_min = scalar<double>(validity[0], origin, where + ".validity_nm") * units::nm;
  m.lambda_max = scalar<double>(validity[1], origin, where + ".validity_nm") * units::nm;
  if (!(m.lambda_min > 0.0 && m.lambda_min < m.lambda_max)) {
    parse_fail(origin, validity.Mark(), where + ".validity_nm must satisfy 0 < min < max");
  }

  const auto constant = node["constant"];
  if (!constant) parse_fail(origin, node.Mark(), where + ".constant is required");
  m.constant = scalar<double>(constant, origin, where + ".constant");

  if (const auto poles = node["poles"]) {
    if (!poles.IsSequence()) parse_fail(origin, poles.Mark(), where + ".poles must be a list");
    for (const auto& p : poles) {
      if (!p.IsSequence() || p.size() != 2) {
        parse_fail(origin, p.Mark(), where + ".poles entries must be [B, C]");
      }
      m.poles.push_back({scalar<double>(p[0], origin, where + ".poles"),
                         scalar<double>(p[1], origin, where + ".poles")});
      const double lmin2 = std::pow(m.lambda_min / units::um, 2);
      const double lmax2 = std::pow(m.lambda_max / units::um, 2);
      if (m.poles.back().resonance >= lmin2 && m.poles.back().resonance <= lmax2) {
        parse_fail(origin, p.Mark(), where + ": pole lies inside the validity window");
      }
    }
  }
  if (const auto powers = node["powers"]) {
    if (!powers.IsSequence()) parse_fail(origin, powers.Mark(), where + ".powers must be a list");
    for (const auto& q : powers) {
      if (!q.IsSequence() || q.size() != 2) {
        parse_fail(origin, q.Mark(), where + ".powers entries must be [D, p]");
      }
      m.powers.push_back({scalar<double>(q[0], origin, where + ".powers"),
                          scalar<int>(q[1], origin, where + ".powers")});
    }
  }

  // n > 1 and finite across the window
  constexpr int kSamples = 512;
  for (int k = 0; k <= kSamples; ++k) {
    const double lam = m.lambda_min + (m.lambda_max - m.lambda_min) * k / kSamples;
    const double l = lam / units::um;
    const double n2 = index_squared(m, l * l);
    if (!std::isfinite(n2) || n2 <= 1.0) {
      parse_fail(origin, node.Mark(), where + ": n <= 1 inside the validity window");
    }
  }
  return m;
}

}  // namespace

CrystalDefinition parse_crystal_definition(std::string_view text, std::string_view origin) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    parse_fail(origin, e.mark, e.msg);
  }
  if (!root.IsMap()) parse_fail(origin, root.Mark(), "top level must be a mapping");
  reject_unknown_keys(root, {"crystal", "source", "axes"}, origin, "top level");

  CrystalDefinition def;
  if (!root["crystal"]) parse_fail(origin, root.Mark(), "'crystal' is required");
  def.name = scalar<std::string>(root["crystal"], origin, "crystal");
  if (root["source"]) def.source = scalar<std::string>(root["source"], origin, "source");

  const auto axes = root["axes"];
  if (!axes || !axes.IsMap() || axes.size() == 0) {
    parse_fail(origin, root.Mark(), "'axes' must be a non-empty mapping");
  }
  for (const auto& kv : axes) {
    const auto label = kv.first.as<std::string>();
    Axis a;
    try {
      a = parse_axis(label);
    } catch (const Error&) {
      parse_fail(origin, kv.first.Mark(), "unknown axis '" + label + "'");
    }
    if (def.has_axis(a)) parse_fail(origin, kv.first.Mark(), "duplicate axis '" + label + "'");
    def.axes.push_back(parse_axis_block(a, kv.second, origin));
  }
  return def;
}

CrystalDefinition load_crystal_definition(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open crystal file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_crystal_definition(buf.str(), path.string());
}

std::filesystem::path data_file(std::string_view name) {
  if (const char* env = std::getenv("SPDC_DATA_DIR"); env && *env) {
    return std::filesystem::path(env) / name;
  }
  return std::filesystem::path(SPDC_DATA_DIR) / name;
}

}  // namespace spdc
