#pragma once

// Autoparallel and null-geodesic integration, the null-compatibility check of
// a connection against its metric, and arc-length trajectory comparison.
//
// Integration state: position x, tangent v = dx/ds, and the auxiliary
// coordinate-Euclidean arc length σ with dσ/ds = |v|.

#include <iosfwd>
#include <string>

#include "weylfluid/connection.hpp"
#include "weylfluid/ode.hpp"

namespace weylfluid {

inline constexpr double kDenseStep = 0.02;

struct WorldlineSample {
  double s = 0.0;
  Point x;
  Coords<double> v{};
  double arc = 0.0;
};

class WorldlinePath {
 public:
  WorldlinePath() = default;
  WorldlinePath(int dim, OdeSolution solution, bool exited);

  int dim() const { return dim_; }
  bool exited() const { return exited_; }
  int steps() const { return solution_.steps; }
  double max_error_estimate() const { return solution_.max_error_estimate; }
  std::size_t size() const { return solution_.samples.size(); }
  WorldlineSample sample(std::size_t i) const;
  /// dv/ds recorded at sample i.
  Coords<double> acceleration(std::size_t i) const;
  double arc_length() const;

  WorldlineSample at(double s) const;
  /// Position after Euclidean arc length σ, found by bisection on dense output.
  Point position_at_arc(double sigma) const;

  void write_csv(std::ostream& out, const std::vector<std::string>& names) const;

 private:
  int dim_ = 0;
  OdeSolution solution_;
  bool exited_ = false;
};

/// ẍ^a + Γ^a_{bc} ẋ^b ẋ^c = 0 from (x0, v0) up to s_max or the chart boundary.
/// Steps are capped at kDenseStep so Hermite dense output stays accurate.
WorldlinePath integrate_autoparallel(const Chart& chart, const ConnectionField& gamma, const Point& x0,
                                     const Coords<double>& v0, double s_max,
                                     const StepperParams& params = {});

struct NullGeodesicSettings {
  double initial_null_tolerance = 1e-10;  // |g(k0,k0)| allowed at the start
  double drift_bound = 1e-8;              // |g(k,k)| allowed along the path
};

/// Levi-Civita geodesic with null initial tangent. Throws integrator_accuracy
/// if the null first integral drifts past the bound.
WorldlinePath integrate_null_geodesic(const DerivativeEngine& engine, const MetricField& g,
                                      const Point& x0, const Coords<double>& k0, double s_max,
                                      const StepperParams& params = {},
                                      const NullGeodesicSettings& settings = {});

/// Integral curve of a vector field, dx/ds = n(x).
WorldlinePath integrate_flow_line(const Chart& chart, const VectorField& n, const Point& x0,
                                  double s_max, const StepperParams& params = {});

struct NullCheckReport {
  double max_orthogonal = 0.0;  // max |D - (D·k/k·k) k| in the coordinate-Euclidean norm
  double max_parallel = 0.0;    // max |λ| with D = λ k + orthogonal part, λ = D·k / k·k
  double max_null_drift = 0.0;  // max |g(k,k)|
  std::size_t samples = 0;
};

/// D^a = k^mu ∇^Γ_mu k^a along a Levi-Civita null geodesic of g; for an
/// EPS-compatible Γ it is parallel to k.
NullCheckReport eps_null_check(const MetricField& g, const ConnectionField& gamma,
                               const WorldlinePath& path);

struct TrajectoryComparison {
  double max_deviation = 0.0;
  double common_arc = 0.0;
};

/// Maximum coordinate distance between two paths reparametrized by arc length,
/// over their common arc range.
TrajectoryComparison trajectory_compare(const WorldlinePath& a, const WorldlinePath& b,
                                        int resolution = 400);

}  // namespace weylfluid
