#pragma once

// Run configuration: an INI file with sections [run], [spacetime], [fluid],
// [derivative], [tolerances], [sampling], [conformal], [frame], [worldlines]
// and [quadrature]. Unknown sections or keys are rejected before any
// computation starts.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weylfluid/catalog.hpp"
#include "weylfluid/chart.hpp"
#include "weylfluid/derivative.hpp"

namespace weylfluid {

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s{"connection", "fluid", "conservation", "conformal", "frame", "worldlines"};
  return s;
}

struct Tolerances {
  double ad = 1e-9;
  double fd = 1e-5;
  double identity = 1e-8;    // current identity and decomposition checks
  double frame = 1e-4;
  double frame_closed_form = 1e-6;
  double quadrature = 1e-6;  // relative
  double trajectory = 1e-6;  // per unit arc
  double null_check = 1e-8;
};

struct SuiteConfig {
  std::string preset;  // optional named preset the sections refine
  std::vector<std::string> suites = all_suites();
  std::uint64_t seed = 7;
  std::string output;
  std::string format = "json";
  bool record_runtime = false;

  SpacetimeParams spacetime;
  FluidParams fluid;
  DerivativeSettings derivative;
  Tolerances tolerances;
  SamplingSettings sampling;

  std::optional<int> weight_override;  // conformal weight w; the default is 1 - m
  double factor_amplitude = 0.1;

  int frame_nodes = 17;
  std::optional<int> frame_coordinate;
  std::optional<double> frame_value;
  double frame_fd_step = 1e-4;

  int rays = 5;
  double ray_arc = 1.0;

  int quadrature_nodes = 33;
  std::vector<double> slices = {0.0, 5.0};
};

SuiteConfig parse_config(const std::string& text);
SuiteConfig load_config(const std::string& path);

/// Applies one "section.key = value" assignment with the same validation as
/// the file parser.
void set_config_value(SuiteConfig& config, const std::string& dotted_key, const std::string& value);

/// Checks cross-field constraints (suite names, formats, ranges).
void validate_config(const SuiteConfig& config);

}  // namespace weylfluid
