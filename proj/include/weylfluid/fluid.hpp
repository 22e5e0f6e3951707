#pragma once

#include <string>
#include <vector>

#include "weylfluid/connection.hpp"

namespace weylfluid {

/// Perfect fluid on a metric: unit timelike velocity, pressure, density and
/// the reparametrization scalar of its flow lines.
struct FluidState {
  VectorField n;
  ScalarField p;
  ScalarField rho;
  ScalarField phi;
};

/// Metric, Weyl covector and the EPS connection they determine.
struct WeylBundle {
  MetricField g;
  CovectorField A;
  ConnectionField gamma;
};

/// Jet of n_nu = g_{nu a} n^a.
Components<Jet> lower_jet(const Components<Jet>& g, const Components<Jet>& n);

/// A_nu = n^mu ∇^{g}_mu n_nu + φ n_nu, the covector that makes n Γ-geodesic
/// with reparametrization φ.
CovectorField fluid_covector(const DerivativeEngine& engine, const MetricField& g,
                             const VectorField& n, const ScalarField& phi);

WeylBundle make_bundle(const DerivativeEngine& engine, const MetricField& g, const CovectorField& A);

WeylBundle fluid_connection(const DerivativeEngine& engine, const MetricField& g,
                            const VectorField& n, const ScalarField& phi);

/// D^a = n^mu ∇^Γ_mu n^a - φ n^a.
VectorField geodesic_defect(const DerivativeEngine& engine, const WeylBundle& bundle,
                            const VectorField& n, const ScalarField& phi);

/// T_{mu nu} = p g_{mu nu} + (p + ρ) n_mu n_nu.
Tensor2Field stress_energy(const MetricField& g, const VectorField& n, const ScalarField& p,
                           const ScalarField& rho);

/// T^{mu nu} with both indices raised by g (propagates jets).
Tensor2UpField raise_both(const MetricField& g, const Tensor2Field& T);

struct FluidValidation {
  double normalization_residual = 0.0;  // max |g(n,n) + 1|
  std::vector<std::string> warnings;
};

/// Checks g(n,n) = -1 and records a warning where ρ < 0.
FluidValidation validate_fluid(const MetricField& g, const FluidState& fluid,
                               const std::vector<Point>& points);

}  // namespace weylfluid
