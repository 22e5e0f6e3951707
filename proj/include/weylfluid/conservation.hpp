#pragma once

// Weyl-covariant divergence of the perfect-fluid stress tensor, its split into
// the two scalar conservation conditions, and the particle current J.

#include <vector>

#include "weylfluid/fluid.hpp"
#include "weylfluid/quadrature.hpp"

namespace weylfluid {

/// ∇^Γ_nu T^{mu nu} with both indices of T raised by g.
VectorField weyl_divergence_T(const DerivativeEngine& engine, const MetricField& g,
                              const ConnectionField& gamma, const Tensor2Field& T);

/// ∇^{g}_mu n^mu.
ScalarField metric_divergence(const DerivativeEngine& engine, const MetricField& g,
                              const VectorField& n);
/// Pointwise ∂_mu n^mu + {g}^mu_{mu l} n^l from jets.
double metric_divergence_at(const Components<Jet>& g_jet, const Components<Jet>& n_jet);

struct ConservationConditions {
  /// (p+ρ) ∇^Γ_nu n^nu - (p-ρ) φ + n^nu ∂_nu ρ
  ScalarField c1;
  /// (g^{mu nu} + n^mu n^nu) ∂_nu p - 2 p n^nu ∇^{g}_nu n^mu
  VectorField c2;
};

ConservationConditions conservation_condition_residuals(const DerivativeEngine& engine,
                                                        const MetricField& g,
                                                        const ConnectionField& gamma,
                                                        const FluidState& fluid);

struct DecompositionResiduals {
  /// n_mu W^mu - kAlongFlow C1
  ScalarField along;
  /// (δ + n n) W - kTransverse C2
  VectorField transverse;
};

DecompositionResiduals decomposition_residuals(const DerivativeEngine& engine,
                                               const WeylBundle& bundle, const FluidState& fluid);

/// J^mu = √|g| T^{mu nu} n_nu.
VectorDensityField particle_current(const MetricField& g, const Tensor2Field& T,
                                    const VectorField& n);

/// J^mu + √|g| ρ n^mu, which vanishes for perfect-fluid stress tensors.
VectorField current_closed_form_residual(const MetricField& g, const VectorDensityField& J,
                                         const FluidState& fluid);

/// ∂_mu J^mu.
ScalarField current_divergence(const DerivativeEngine& engine, const VectorDensityField& J);

/// Coordinate slice x^k = value with an integration box over the remaining
/// coordinates (in chart order) and Simpson node counts per axis.
struct SliceSpec {
  int coordinate = 0;
  double value = 0.0;
  std::vector<Interval> box;
  std::vector<int> nodes;
};

/// Slice over the full range of the other coordinates with `nodes` per axis.
SliceSpec full_slice(const Chart& chart, int coordinate, double value, int nodes = 33);

/// N = ∫ J^k over the slice. The value is signed; no orientation is imposed.
QuadratureResult number_on_slice(const Chart& chart, const VectorDensityField& J,
                                 const SliceSpec& slice);

struct ConditionScalars {
  ScalarField s1;              // T^{mu nu} ∇^Γ_mu n_nu
  ScalarField s2;              // T^{mu nu} A_mu n_nu
  ScalarField s1_closed_form;  // p ∇^g_mu n^mu + (ρ + (m-1) p) φ
  ScalarField s2_closed_form;  // ρ φ
  ScalarField s1_residual;
  ScalarField s2_residual;
};

ConditionScalars condition_scalars(const DerivativeEngine& engine, const WeylBundle& bundle,
                                   const FluidState& fluid);

/// ∂_mu J^mu - √|g| (∇^Γ_mu T^{mu nu} n_nu + T^{mu nu} ∇^Γ_mu n_nu) - m √|g| A_mu T^{mu nu} n_nu.
ScalarField current_identity_residual(const DerivativeEngine& engine, const WeylBundle& bundle,
                                      const Tensor2Field& T, const VectorField& n);

}  // namespace weylfluid
