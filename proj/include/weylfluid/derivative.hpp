#pragma once

#include "weylfluid/chart.hpp"
#include "weylfluid/field.hpp"

namespace weylfluid {

enum class DerivativeMode { forward_dual, central_difference };

struct DerivativeSettings {
  DerivativeMode mode = DerivativeMode::forward_dual;
  double step = 1e-4;
  int richardson = 0;
  double tol_ad = 1e-9;
  double tol_fd = 1e-5;
};

/// Produces first-order jets of fields on a chart, either by propagating
/// dual numbers through closed-form components or by central differences.
/// ∇∗ on scalars is the plain coordinate gradient computed here.
class DerivativeEngine {
 public:
  DerivativeEngine(const Chart& chart, DerivativeSettings settings = {});

  const Chart& chart() const { return chart_; }
  const DerivativeSettings& settings() const { return settings_; }
  DerivativeMode mode() const { return settings_.mode; }
  /// Residual tolerance appropriate for the active mode.
  double tolerance() const;
  /// Rule used by derived fields built on top of this engine.
  FdRule fd_rule() const;

  Components<Jet> jet(const Field& f, const Point& x) const;
  template <class F>
  Components<Jet> jet(const F& f, const Point& x) const {
    return jet(f.field(), x);
  }

 private:
  Chart chart_;
  DerivativeSettings settings_;
};

/// ∂_mu f(x).
Coords<double> grad_scalar(const DerivativeEngine& engine, const ScalarField& f, const Point& x);

}  // namespace weylfluid
