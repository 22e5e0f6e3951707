#pragma once

// Levi-Civita and EPS-compatible (Weyl) connections together with the
// covariant derivative of fields up to rank 2.
//
// Index layout of connection coefficients: Γ^a_{bc} is stored at (a, b, c).
// Covariant derivatives put the derivative index first: ∇_mu F^{nu} at (mu, nu).
//
// Weight-1 scalar densities such as √|g| are differentiated with
//   ∇_mu w = ∂_mu w - Γ^l_{l mu} w,
// which is the rule the particle-current bookkeeping relies on.

#include <string>

#include "weylfluid/derivative.hpp"
#include "weylfluid/metric.hpp"

namespace weylfluid {

enum class ConnectionKind { levi_civita, eps, external };

const char* to_string(ConnectionKind kind);

class ConnectionField {
 public:
  ConnectionField() = default;
  ConnectionField(Field coefficients, ConnectionKind kind);

  const Field& field() const { return f_; }
  int dim() const { return f_.dim(); }
  ConnectionKind kind() const { return kind_; }
  Components<double> operator()(const Point& p) const { return f_(p); }
  Components<double> eval(const Coords<double>& x) const { return f_.eval(x); }

 private:
  Field f_;
  ConnectionKind kind_ = ConnectionKind::external;
};

/// Christoffel symbols of the second kind from a metric jet.
Components<double> christoffel(const Components<Jet>& g_jet, const Components<double>& g_inverse);

/// Adds (g^{ae} g_{bc} - δ^a_b δ^e_c - δ^a_c δ^e_b) A_e to `gamma`.
void add_weyl_terms(Components<double>& gamma, const Components<double>& g,
                    const Components<double>& g_inverse, const Components<double>& A);

ConnectionField levi_civita(const DerivativeEngine& engine, const MetricField& g);
ConnectionField eps_connection(const DerivativeEngine& engine, const MetricField& g,
                               const CovectorField& A);

/// ∇_mu F at a point from the jet of F and the connection coefficients.
/// `variance` describes F ("", "u", "d", "uu", "dd", "ud", "du").
Components<double> covariant_derivative_at(const Components<Jet>& F, const std::string& variance,
                                           const Components<double>& gamma);

/// Field-level covariant derivative; the result has variance "d" + F's variance.
Field covariant_derivative(const DerivativeEngine& engine, const ConnectionField& gamma,
                           const Field& F);

/// ∇_mu w = ∂_mu w - Γ^l_{l mu} w for a scalar density of weight 1.
Coords<double> density_derivative_at(const Jet& density, const Components<double>& gamma);

/// ∇^Γ_mu g_{ab} - 2 A_mu g_{ab}.
Tensor3Field nonmetricity_residual(const DerivativeEngine& engine, const ConnectionField& gamma,
                                   const MetricField& g, const CovectorField& A);

/// ∇^Γ_mu √|g| - m A_mu √|g|.
CovectorField density_trace_residual(const DerivativeEngine& engine, const ConnectionField& gamma,
                                     const MetricField& g, const CovectorField& A);

/// Γ^a_{bc} - Γ^a_{cb}, variance "udd".
Field torsion(const ConnectionField& gamma);

}  // namespace weylfluid
