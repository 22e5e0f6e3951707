#pragma once

// Conformal rescaling of the fluid bundle (g, n, A, φ, p, ρ) and the solver for
// the preferred conformal frame in which the flow is divergence free.

#include <vector>

#include "weylfluid/conservation.hpp"
#include "weylfluid/ode.hpp"

namespace weylfluid {

/// Positive conformal factor Φ together with ln Φ.
class ConformalFactor {
 public:
  ConformalFactor() = default;
  /// Φ = exp(lnΦ); positivity holds by construction.
  static ConformalFactor from_log(ScalarField ln_phi);
  /// Φ given directly; throws a gauge error where Φ <= 0 at a sample.
  static ConformalFactor from_factor(ScalarField phi, const std::vector<Point>& samples);
  /// Φ = Φ₁ Φ₂.
  static ConformalFactor product(const ConformalFactor& a, const ConformalFactor& b);

  const ScalarField& factor() const { return factor_; }
  const ScalarField& log() const { return log_; }
  bool numeric() const { return log_.field().origin() != FieldOrigin::closed_form; }

 private:
  ScalarField factor_;
  ScalarField log_;
};

/// Exponent w with p̃ = Φ^w p and ρ̃ = Φ^w ρ. Particle-number invariance fixes
/// w = 1 - m; `override_weight` exists for negative controls.
struct ConformalWeights {
  int dim = 4;
  int w = -3;
  bool overridden = false;

  static ConformalWeights standard(int dim) { return {dim, 1 - dim, false}; }
  static ConformalWeights override_weight(int dim, int w) { return {dim, w, w != 1 - dim}; }
  int stress_weight() const { return w + 2; }
  int current_weight() const { return dim + w - 1; }
};

/// The objects a conformal change of representative acts on.
struct FluidBundle {
  MetricField g;
  FluidState fluid;
  CovectorField A;
};

/// g̃ = Φ² g, ñ = n/Φ, Ã = A + d lnΦ, φ̃ = (φ - n^mu ∂_mu lnΦ)/Φ, p̃ = Φ^w p, ρ̃ = Φ^w ρ.
FluidBundle conformal_rescale(const DerivativeEngine& engine, const FluidBundle& bundle,
                              const ConformalFactor& factor, const ConformalWeights& weights);

/// T̃_{mu nu} - Φ^{3-m} T_{mu nu}.
Tensor2Field rescaled_stress_energy_residual(const Tensor2Field& T, const Tensor2Field& T_rescaled,
                                             const ConformalFactor& factor, int dim);

/// J̃^mu - J^mu.
VectorField current_invariance_residual(const VectorDensityField& J,
                                        const VectorDensityField& J_rescaled);

/// Values of a scalar on a regular node grid covering a box, interpolated with
/// tensor-product cubic Lagrange stencils.
class GridScalar {
 public:
  GridScalar(std::vector<Interval> box, int nodes_per_axis, std::vector<double> values);

  int dim() const { return static_cast<int>(box_.size()); }
  int nodes_per_axis() const { return nodes_; }
  const std::vector<Interval>& box() const { return box_; }
  const std::vector<double>& values() const { return values_; }
  double node_coordinate(int axis, int k) const;
  /// Coordinates of the node with flat (row-major) index `flat`.
  Coords<double> node(std::size_t flat) const;
  double operator()(const Coords<double>& x) const;

 private:
  std::vector<Interval> box_;
  int nodes_;
  std::vector<double> values_;
};

struct FrameSolverParams {
  StepperParams stepper{1e-10, 1e-10, 0.05};
  int nodes_per_axis = 17;
  double fd_step = 1e-4;
};

/// Transport of ln Φ along the flow: n^e ∂_e lnΦ = -∇^g_mu n^mu / (m-1), with
/// lnΦ = 0 on the seed slice x^k = c. Characteristics are integrated with x^k
/// as the independent variable, so they end exactly on the slice. When g and n
/// are closed-form their jets are taken by forward duals regardless of the
/// engine mode.
class PreferredFrameSolver {
 public:
  PreferredFrameSolver(const DerivativeEngine& engine, MetricField g, VectorField n, int slice_coordinate,
                       double slice_value, FrameSolverParams params = {});

  /// lnΦ at x by integrating the characteristic through x back to the seed slice.
  double solve_at(const Point& x) const;
  /// Solves at every node of the memo grid covering the chart box.
  GridScalar solve_grid() const;
  /// Numeric conformal factor interpolated from a solved grid.
  ConformalFactor factor_from_grid(const GridScalar& grid) const;

  int slice_coordinate() const { return k_; }
  double slice_value() const { return c_; }

 private:
  DerivativeEngine engine_;
  MetricField g_;
  VectorField n_;
  int k_;
  double c_;
  FrameSolverParams params_;
};

struct PreferredFrame {
  GridScalar grid;
  ConformalFactor factor;
};

PreferredFrame preferred_frame(const DerivativeEngine& engine, const MetricField& g, const VectorField& n,
                               int slice_coordinate, double slice_value, const FrameSolverParams& params = {});

/// n^e ∂_e lnΦ + ∇^g_mu n^mu / (m-1).
ScalarField transport_residual(const DerivativeEngine& engine, const MetricField& g, const VectorField& n,
                               const ConformalFactor& factor);

/// ∇^{g̃}_mu ñ^mu.
ScalarField incompressibility_residual(const DerivativeEngine& engine, const MetricField& g_rescaled,
                                       const VectorField& n_rescaled);

/// Ã_nu = ñ^mu ∇^{g̃}_mu ñ_nu, the fluid covector with φ̃ = 0.
CovectorField preferred_weyl_covector(const DerivativeEngine& engine, const MetricField& g_rescaled,
                                      const VectorField& n_rescaled);

}  // namespace weylfluid
