#include "weylfluid/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace weylfluid {

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw Error(ErrorKind::config, "config key '" + key + "': " + why);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(d)) bad(key, "expected a finite number, got '" + v + "'");
  return d;
}

long long to_int(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  char* end = nullptr;
  errno = 0;
  const long long i = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0' || errno == ERANGE) bad(key, "expected an integer, got '" + v + "'");
  return i;
}

int to_int_in(const std::string& key, const std::string& v, int lo, int hi) {
  const long long i = to_int(key, v);
  if (i < lo || i > hi) bad(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(i);
}

double positive(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (!(d > 0.0)) bad(key, "must be positive");
  return d;
}

bool to_bool(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  if (t == "true") return true;
  if (t == "false") return false;
  bad(key, "expected true or false");
}

std::vector<std::string> to_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string one_of(const std::string& key, const std::string& v, std::initializer_list<const char*> options) {
  const std::string t = trim(v);
  for (const char* o : options)
    if (t == o) return t;
  std::string all;
  for (const char* o : options) all += std::string(all.empty() ? "" : ", ") + o;
  bad(key, "expected one of {" + all + "}, got '" + t + "'");
}

using Setter = std::function<void(SuiteConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> s = {
      {"run.preset",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         try {
           const NamedPreset p = named_preset(trim(v));
           c.spacetime = p.spacetime;
           c.fluid = p.fluid;
           c.preset = trim(v);
         } catch (const Error& e) {
           bad(k, e.what());
         }
       }},
      {"run.suites", [](SuiteConfig& c, const std::string&, const std::string& v) { c.suites = to_list(v); }},
      {"run.seed",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         const long long s = to_int(k, v);
         if (s < 0) bad(k, "must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"run.output", [](SuiteConfig& c, const std::string&, const std::string& v) { c.output = trim(v); }},
      {"run.format",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.format = one_of(k, v, {"json", "table"}); }},
      {"run.record_runtime",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.record_runtime = to_bool(k, v); }},

      {"spacetime.kind",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         c.spacetime.kind = one_of(k, v, {"minkowski", "flrw-exp", "flrw-power", "schwarzschild"});
       }},
      {"spacetime.dim",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.spacetime.dim = to_int_in(k, v, 2, kMaxDim); }},
      {"spacetime.hubble",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.spacetime.hubble = to_double(k, v); }},
      {"spacetime.power",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.spacetime.power = positive(k, v); }},
      {"spacetime.schwarzschild_radius",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         c.spacetime.schwarzschild_radius = positive(k, v);
       }},
      {"spacetime.perturbation",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         c.spacetime.perturbation = to_double(k, v);
       }},

      {"fluid.velocity",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         c.fluid.velocity = one_of(k, v, {"comoving", "sheared"});
       }},
      {"fluid.shear", [](SuiteConfig& c, const std::string& k, const std::string& v) { c.fluid.shear = to_double(k, v); }},
      {"fluid.shear_profile",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         c.fluid.shear_profile = one_of(k, v, {"linear", "seeded"});
       }},
      {"fluid.eos_w", [](SuiteConfig& c, const std::string& k, const std::string& v) { c.fluid.eos_w = to_double(k, v); }},
      {"fluid.density",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         c.fluid.density = one_of(k, v, {"constant", "linear", "conserved", "polynomial"});
       }},
      {"fluid.rho0", [](SuiteConfig& c, const std::string& k, const std::string& v) { c.fluid.rho0 = to_double(k, v); }},
      {"fluid.phi",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         c.fluid.phi = one_of(k, v, {"zero", "constant", "polynomial", "frame"});
       }},
      {"fluid.phi0", [](SuiteConfig& c, const std::string& k, const std::string& v) { c.fluid.phi0 = to_double(k, v); }},

      {"derivative.mode",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         c.derivative.mode = one_of(k, v, {"forward-dual", "central-difference"}) == "forward-dual"
                                 ? DerivativeMode::forward_dual
                                 : DerivativeMode::central_difference;
       }},
      {"derivative.step",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.derivative.step = positive(k, v); }},
      {"derivative.richardson",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         c.derivative.richardson = to_int_in(k, v, 0, 1);
       }},

      {"tolerances.ad",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         c.tolerances.ad = c.derivative.tol_ad = positive(k, v);
       }},
      {"tolerances.fd",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         c.tolerances.fd = c.derivative.tol_fd = positive(k, v);
       }},
      {"tolerances.identity",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.tolerances.identity = positive(k, v); }},
      {"tolerances.frame",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.tolerances.frame = positive(k, v); }},
      {"tolerances.frame_closed_form",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.tolerances.frame_closed_form = positive(k, v); }},
      {"tolerances.quadrature",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.tolerances.quadrature = positive(k, v); }},
      {"tolerances.trajectory",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.tolerances.trajectory = positive(k, v); }},
      {"tolerances.null_check",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.tolerances.null_check = positive(k, v); }},

      {"sampling.grid_per_axis",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.sampling.grid_per_axis = to_int_in(k, v, 0, 64); }},
      {"sampling.random_points",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         c.sampling.random_points = to_int_in(k, v, 0, 1000000);
       }},

      {"conformal.weight_override",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.weight_override = to_int_in(k, v, -16, 16); }},
      {"conformal.factor_amplitude",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.factor_amplitude = positive(k, v); }},

      {"frame.nodes_per_axis",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.frame_nodes = to_int_in(k, v, 4, 65); }},
      {"frame.slice_coordinate",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         c.frame_coordinate = to_int_in(k, v, 0, kMaxDim - 1);
       }},
      {"frame.slice_value",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.frame_value = to_double(k, v); }},
      {"frame.fd_step",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.frame_fd_step = positive(k, v); }},

      {"worldlines.rays",
       [](SuiteConfig& c, const std::string& k, const std::string& v) { c.rays = to_int_in(k, v, 0, 1000); }},
      {"worldlines.arc", [](SuiteConfig& c, const std::string& k, const std::string& v) { c.ray_arc = positive(k, v); }},

      {"quadrature.nodes",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         c.quadrature_nodes = to_int_in(k, v, 3, 1025);
         if (c.quadrature_nodes % 2 == 0) bad(k, "node count must be odd");
       }},
      {"quadrature.slices",
       [](SuiteConfig& c, const std::string& k, const std::string& v) {
         std::vector<double> s;
         for (const std::string& item : to_list(v)) s.push_back(to_double(k, item));
         if (s.size() < 2) bad(k, "needs at least two slice values");
         c.slices = std::move(s);
       }},
  };
  return s;
}

}  // namespace

void set_config_value(SuiteConfig& config, const std::string& dotted_key, const std::string& value) {
  const auto it = setters().find(dotted_key);
  if (it == setters().end()) throw Error(ErrorKind::config, "unknown config key '" + dotted_key + "'");
  it->second(config, dotted_key, value);
}

void validate_config(const SuiteConfig& c) {
  if (c.suites.empty()) throw Error(ErrorKind::config, "no suites selected");
  for (const std::string& s : c.suites)
    if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
      throw Error(ErrorKind::config, "unknown suite '" + s + "'");
  if (c.format != "json" && c.format != "table") throw Error(ErrorKind::config, "unknown format '" + c.format + "'");
  if (c.sampling.grid_per_axis == 0 && c.sampling.random_points == 0)
    throw Error(ErrorKind::config, "sampling selects no points");
  if (!(c.spacetime.perturbation >= 0.0 && c.spacetime.perturbation <= 0.01))
    throw Error(ErrorKind::config, "spacetime.perturbation must lie in [0, 0.01]");
  if (c.spacetime.dim < 2 || c.spacetime.dim > 4) throw Error(ErrorKind::config, "spacetime.dim must be 2, 3 or 4");
}

SuiteConfig parse_config(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::config, std::string("malformed config: ") + e.message() + " (line " +
                                       std::to_string(e.line()) + ")");
  }
  SuiteConfig c;
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      const bool known_section = std::any_of(setters().begin(), setters().end(), [&](const auto& kv) {
        return kv.first.rfind(section + ".", 0) == 0;
      });
      if (known_section && body.data().empty()) continue;
      throw Error(ErrorKind::config, "key '" + section + "' must belong to a known section");
    }
    for (const auto& [key, value] : body) {
      const std::string dotted = section + "." + key;
      if (!setters().count(dotted)) throw Error(ErrorKind::config, "unknown config key '" + dotted + "'");
      entries.emplace_back(dotted, value.data());
    }
  }
  // The preset provides defaults that the explicit keys refine.
  for (const auto& [k, v] : entries)
    if (k == "run.preset") set_config_value(c, k, v);
  for (const auto& [k, v] : entries)
    if (k != "run.preset") set_config_value(c, k, v);
  validate_config(c);
  return c;
}

SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config, "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace weylfluid
