#pragma once

// Built-in spacetimes and fluids. Construction is deterministic for a fixed
// parameter set and seed; every preset is validated when it is built.
//
// The FLRW conserved-dust profile ρ = ρ0 a^{1-m} has the same exponent as the
// conformal weight of ρ. The two facts are independent; the profile is simply
// the one that makes the particle current divergence-free.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "weylfluid/fluid.hpp"

namespace weylfluid {

struct SpacetimeParams {
  std::string kind = "minkowski";  // minkowski | flrw-exp | flrw-power | schwarzschild
  int dim = 4;
  double hubble = 0.1;              // flrw-exp: a = e^{H t}
  double power = 0.5;               // flrw-power: a = t^q
  double schwarzschild_radius = 1.0;
  double perturbation = 0.0;        // ε of the seeded polynomial perturbation, at most 0.01
};

struct FluidParams {
  std::string velocity = "comoving";  // comoving | sheared
  double shear = 0.1;                 // ε in normalize(∂_t + ε s ∂_1)
  std::string shear_profile = "linear";  // linear | seeded
  double eos_w = 0.0;                 // p = w ρ, w ∈ {0, 1/3}
  std::string density = "constant";   // constant | linear | conserved | polynomial
  double rho0 = 1.0;
  std::string phi = "zero";           // zero | constant | polynomial | frame
  double phi0 = 0.0;
};

struct Spacetime {
  std::string name;
  SpacetimeParams params;
  Chart chart;
  MetricField g;
  /// Scale factor for FLRW spacetimes.
  std::function<double(double)> scale_factor;
  /// Slice used by the preferred-frame solver unless configured otherwise.
  int frame_coordinate = 0;
  double frame_value = 0.0;
};

struct Preset {
  Spacetime spacetime;
  FluidState fluid;
};

/// Sample points used for construction-time checks.
std::vector<Point> validation_points(const Chart& chart);

Spacetime build_spacetime(const SpacetimeParams& params, std::uint64_t seed);
FluidState build_fluid(const DerivativeEngine& engine, const Spacetime& st, const FluidParams& params,
                       std::uint64_t seed);

/// Named presets: minkowski-dust-rest, flrw-comoving-dust, minkowski-sheared,
/// schwarzschild-static, flrw-radiation-sheared.
struct NamedPreset {
  SpacetimeParams spacetime;
  FluidParams fluid;
};
NamedPreset named_preset(const std::string& name);
std::vector<std::string> preset_names();

/// Builds the spacetime and a fluid on it with default engine settings.
Preset build(const SpacetimeParams& st_params, const FluidParams& fluid_params, std::uint64_t seed);
Preset build(const std::string& name, std::uint64_t seed);

/// Parameter combinations exercised by the property suites: every spacetime
/// kind (with and without perturbation) crossed with several fluids.
std::vector<NamedPreset> preset_matrix();
std::string describe(const NamedPreset& p);

/// amplitude · P(x) with P a seeded degree-2 polynomial in box-normalized
/// coordinates, |P| <= 1 on the chart.
ScalarField seeded_polynomial(const Chart& chart, std::uint64_t seed, double amplitude);
/// Covector with seeded polynomial components of size at most `amplitude`.
CovectorField seeded_covector(const Chart& chart, std::uint64_t seed, double amplitude);

/// lnΦ = -ln(a(t)/a(c)) for comoving flow on FLRW with seed slice t = c.
ScalarField flrw_frame_log(const Spacetime& st, double slice_value);

/// Future-directed null vector at x whose spatial part is `spatial`
/// (components 1..m-1; component 0 is ignored).
Coords<double> null_direction(const MetricField& g, const Point& x, const Coords<double>& spatial);

/// Tangent (1, 0, 0, Ω) of the circular equatorial geodesic at radius r in
/// Schwarzschild coordinates, Ω² = r_s / (2 r³).
Coords<double> circular_orbit_tangent(const SpacetimeParams& params, double r);

}  // namespace weylfluid
