#include "weylfluid/fluid.hpp"

#include <cmath>
#include <sstream>

namespace weylfluid {

Components<Jet> lower_jet(const Components<Jet>& g, const Components<Jet>& n) {
  const int m = g.dim;
  Components<Jet> out(m, 1);
  for (int a = 0; a < m; ++a) {
    Jet s;
    for (int b = 0; b < m; ++b) s += g(a, b) * n(b);
    out(a) = s;
  }
  return out;
}

CovectorField fluid_covector(const DerivativeEngine& engine, const MetricField& g,
                             const VectorField& n, const ScalarField& phi) {
  const int m = g.dim();
  Field::EvalF64 f = [engine, g, n, phi, m](const Coords<double>& x, Components<double>& out) {
    Point p;
    p.dim = m;
    p.x = x;
    const Components<Jet> gj = engine.jet(g, p);
    const Components<Jet> nj = engine.jet(n, p);
    const MetricAlgebra<double> alg = metric_algebra(values(gj));
    const Components<double> lc = christoffel(gj, alg.inverse);
    const Components<double> dn = covariant_derivative_at(lower_jet(gj, nj), "d", lc);
    const Components<Jet> nl = lower_jet(gj, nj);
    const double ph = phi.eval(x)();
    for (int nu = 0; nu < m; ++nu) {
      double s = 0.0;
      for (int mu = 0; mu < m; ++mu) s += nj(mu).v * dn(mu, nu);
      out(nu) = s + ph * nl(nu).v;
    }
  };
  return CovectorField(Field::from_values(m, "d", std::move(f), engine.fd_rule()));
}

WeylBundle make_bundle(const DerivativeEngine& engine, const MetricField& g, const CovectorField& A) {
  return WeylBundle{g, A, eps_connection(engine, g, A)};
}

WeylBundle fluid_connection(const DerivativeEngine& engine, const MetricField& g,
                            const VectorField& n, const ScalarField& phi) {
  return make_bundle(engine, g, fluid_covector(engine, g, n, phi));
}

VectorField geodesic_defect(const DerivativeEngine& engine, const WeylBundle& bundle,
                            const VectorField& n, const ScalarField& phi) {
  const int m = bundle.g.dim();
  const ConnectionField gamma = bundle.gamma;
  Field::EvalF64 f = [engine, gamma, n, phi, m](const Coords<double>& x, Components<double>& out) {
    Point p;
    p.dim = m;
    p.x = x;
    const Components<Jet> nj = engine.jet(n, p);
    const Components<double> dn = covariant_derivative_at(nj, "u", gamma.eval(x));
    const double ph = phi.eval(x)();
    for (int a = 0; a < m; ++a) {
      double s = 0.0;
      for (int mu = 0; mu < m; ++mu) s += nj(mu).v * dn(mu, a);
      out(a) = s - ph * nj(a).v;
    }
  };
  return VectorField(Field::from_values(m, "u", std::move(f), engine.fd_rule()));
}

Tensor2Field stress_energy(const MetricField& g, const VectorField& n, const ScalarField& p,
                           const ScalarField& rho) {
  const int m = g.dim();
  auto fn = [m](auto& out, const auto& gc, const auto& nc, const auto& pc, const auto& rc) {
    using S = std::decay_t<decltype(gc(0, 0))>;
    Coords<S> nl{};
    for (int a = 0; a < m; ++a) {
      S s(0.0);
      for (int b = 0; b < m; ++b) s = s + gc(a, b) * nc(b);
      nl[a] = s;
    }
    const S pr = pc();
    const S sum = pr + rc();
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) out(a, b) = pr * gc(a, b) + sum * nl[a] * nl[b];
  };
  return Tensor2Field(Field::compose(m, "dd", fn, g, n, p, rho));
}

Tensor2UpField raise_both(const MetricField& g, const Tensor2Field& T) {
  const int m = g.dim();
  auto fn = [m](auto& out, const auto& gc, const auto& tc) {
    using S = std::decay_t<decltype(gc(0, 0))>;
    const MetricAlgebra<S> alg = metric_algebra(gc);
    const auto& gi = alg.inverse;
    Components<S> half(m, 2);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        S s(0.0);
        for (int e = 0; e < m; ++e) s = s + gi(a, e) * tc(e, b);
        half(a, b) = s;
      }
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        S s(0.0);
        for (int e = 0; e < m; ++e) s = s + half(a, e) * gi(e, b);
        out(a, b) = s;
      }
  };
  return Tensor2UpField(Field::compose(m, "uu", fn, g, T));
}

FluidValidation validate_fluid(const MetricField& g, const FluidState& fluid,
                               const std::vector<Point>& points) {
  FluidValidation v;
  for (const Point& p : points) {
    const Components<double> gc = g(p), nc = fluid.n(p);
    v.normalization_residual = std::max(v.normalization_residual, std::abs(inner(gc, nc, nc) + 1.0));
    const double r = fluid.rho(p)();
    if (r < 0.0) {
      std::ostringstream os;
      os << "negative density " << r << " at sample point";
      v.warnings.push_back(os.str());
    }
  }
  return v;
}

}  // namespace weylfluid
