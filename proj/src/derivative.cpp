#include "weylfluid/derivative.hpp"

namespace weylfluid {

DerivativeEngine::DerivativeEngine(const Chart& chart, DerivativeSettings settings)
    : chart_(chart), settings_(settings) {
  if (!(settings_.step > 0.0)) throw Error(ErrorKind::config, "difference step must be positive");
  if (settings_.richardson < 0 || settings_.richardson > 1)
    throw Error(ErrorKind::config, "Richardson level must be 0 or 1");
}

double DerivativeEngine::tolerance() const {
  return settings_.mode == DerivativeMode::forward_dual ? settings_.tol_ad : settings_.tol_fd;
}

FdRule DerivativeEngine::fd_rule() const {
  return FdRule{settings_.step, settings_.richardson, chart_.box()};
}

Components<Jet> DerivativeEngine::jet(const Field& f, const Point& x) const {
  if (settings_.mode == DerivativeMode::forward_dual) {
    Coords<Jet> seeded{};
    for (int i = 0; i < chart_.dim(); ++i) seeded[i] = Jet::variable(x[i], i);
    return f.eval(seeded);
  }
  Field::EvalF64 values = [&f](const Coords<double>& y, Components<double>& out) {
    out = f.eval(y);
  };
  return fd_jet(values, f.dim(), f.rank(), x.x, fd_rule());
}

Coords<double> grad_scalar(const DerivativeEngine& engine, const ScalarField& f, const Point& x) {
  const Components<Jet> j = engine.jet(f, x);
  Coords<double> g{};
  for (int mu = 0; mu < engine.chart().dim(); ++mu) g[mu] = j().d[mu];
  return g;
}

}  // namespace weylfluid
