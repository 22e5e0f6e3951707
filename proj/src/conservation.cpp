#include "weylfluid/conservation.hpp"

#include "weylfluid/sign_constants.hpp"

namespace weylfluid {

namespace {

Point at(const Coords<double>& x, int m) {
  Point p;
  p.dim = m;
  p.x = x;
  return p;
}

// ∇^Γ_nu T^{mu nu} from the jet of T^{mu nu}.
Coords<double> divergence_up(const Components<Jet>& t_up, const Components<double>& gamma) {
  const int m = t_up.dim;
  Coords<double> w{};
  for (int mu = 0; mu < m; ++mu) {
    double s = 0.0;
    for (int nu = 0; nu < m; ++nu) {
      s += t_up(mu, nu).d[nu];
      for (int l = 0; l < m; ++l) s += gamma(mu, nu, l) * t_up(l, nu).v + gamma(nu, nu, l) * t_up(mu, l).v;
    }
    w[mu] = s;
  }
  return w;
}

double trace_mixed(const Components<double>& dn) {
  double s = 0.0;
  for (int a = 0; a < dn.dim; ++a) s += dn(a, a);
  return s;
}

}  // namespace

VectorField weyl_divergence_T(const DerivativeEngine& engine, const MetricField& g,
                              const ConnectionField& gamma, const Tensor2Field& T) {
  const int m = g.dim();
  const Tensor2UpField t_up = raise_both(g, T);
  Field::EvalF64 f = [engine, gamma, t_up, m](const Coords<double>& x, Components<double>& out) {
    const Coords<double> w = divergence_up(engine.jet(t_up, at(x, m)), gamma.eval(x));
    for (int mu = 0; mu < m; ++mu) out(mu) = w[mu];
  };
  return VectorField(Field::from_values(m, "u", std::move(f), engine.fd_rule()));
}

double metric_divergence_at(const Components<Jet>& g_jet, const Components<Jet>& n_jet) {
  const int m = g_jet.dim;
  const MetricAlgebra<double> alg = metric_algebra(values(g_jet));
  double div = 0.0;
  for (int mu = 0; mu < m; ++mu) div += n_jet(mu).d[mu];
  // {g}^mu_{mu l} = ½ g^{ab} ∂_l g_{ab}
  for (int l = 0; l < m; ++l) {
    double tr = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) tr += alg.inverse(a, b) * g_jet(a, b).d[l];
    div += 0.5 * tr * n_jet(l).v;
  }
  return div;
}

ScalarField metric_divergence(const DerivativeEngine& engine, const MetricField& g,
                              const VectorField& n) {
  const int m = g.dim();
  Field::EvalF64 f = [engine, g, n, m](const Coords<double>& x, Components<double>& out) {
    const Point p = at(x, m);
    out() = metric_divergence_at(engine.jet(g, p), engine.jet(n, p));
  };
  return ScalarField(Field::from_values(m, "", std::move(f), engine.fd_rule()));
}

ConservationConditions conservation_condition_residuals(const DerivativeEngine& engine,
                                                        const MetricField& g,
                                                        const ConnectionField& gamma,
                                                        const FluidState& fluid) {
  const int m = g.dim();
  Field::EvalF64 c1 = [engine, gamma, fluid, m](const Coords<double>& x, Components<double>& out) {
    const Point p = at(x, m);
    const Components<Jet> nj = engine.jet(fluid.n, p);
    const Components<Jet> rj = engine.jet(fluid.rho, p);
    const double pr = fluid.p.eval(x)(), rho = rj().v, phi = fluid.phi.eval(x)();
    const double div = trace_mixed(covariant_derivative_at(nj, "u", gamma.eval(x)));
    double n_drho = 0.0;
    for (int nu = 0; nu < m; ++nu) n_drho += nj(nu).v * rj().d[nu];
    out() = (pr + rho) * div - (pr - rho) * phi + n_drho;
  };
  Field::EvalF64 c2 = [engine, g, fluid, m](const Coords<double>& x, Components<double>& out) {
    const Point p = at(x, m);
    const Components<Jet> gj = engine.jet(g, p);
    const Components<Jet> nj = engine.jet(fluid.n, p);
    const Components<Jet> pj = engine.jet(fluid.p, p);
    const MetricAlgebra<double> alg = metric_algebra(values(gj));
    const Components<double> dn = covariant_derivative_at(nj, "u", christoffel(gj, alg.inverse));
    const double pr = pj().v;
    for (int mu = 0; mu < m; ++mu) {
      double s = 0.0;
      for (int nu = 0; nu < m; ++nu) {
        s += (alg.inverse(mu, nu) + nj(mu).v * nj(nu).v) * pj().d[nu];
        s -= 2.0 * pr * nj(nu).v * dn(nu, mu);
      }
      out(mu) = s;
    }
  };
  return {ScalarField(Field::from_values(m, "", std::move(c1), engine.fd_rule())),
          VectorField(Field::from_values(m, "u", std::move(c2), engine.fd_rule()))};
}

DecompositionResiduals decomposition_residuals(const DerivativeEngine& engine,
                                               const WeylBundle& bundle, const FluidState& fluid) {
  const int m = bundle.g.dim();
  const VectorField w =
      weyl_divergence_T(engine, bundle.g, bundle.gamma, stress_energy(bundle.g, fluid.n, fluid.p, fluid.rho));
  const ConservationConditions cc = conservation_condition_residuals(engine, bundle.g, bundle.gamma, fluid);
  const MetricField g = bundle.g;
  const VectorField n = fluid.n;
  Field::EvalF64 along = [w, cc, g, n, m](const Coords<double>& x, Components<double>& out) {
    const Components<double> wv = w.eval(x), nl = lower(g.field().eval(x), n.eval(x));
    double s = 0.0;
    for (int mu = 0; mu < m; ++mu) s += nl(mu) * wv(mu);
    out() = s - signs::kAlongFlow * cc.c1.eval(x)();
  };
  Field::EvalF64 transverse = [w, cc, g, n, m](const Coords<double>& x, Components<double>& out) {
    const Components<double> wv = w.eval(x), nv = n.eval(x);
    const Components<double> nl = lower(g.field().eval(x), nv);
    const Components<double> c2 = cc.c2.eval(x);
    double nw = 0.0;
    for (int l = 0; l < m; ++l) nw += nl(l) * wv(l);
    for (int mu = 0; mu < m; ++mu) out(mu) = wv(mu) + nv(mu) * nw - signs::kTransverse * c2(mu);
  };
  return {ScalarField(Field::from_values(m, "", std::move(along), engine.fd_rule())),
          VectorField(Field::from_values(m, "u", std::move(transverse), engine.fd_rule()))};
}

VectorDensityField particle_current(const MetricField& g, const Tensor2Field& T,
                                    const VectorField& n) {
  const int m = g.dim();
  auto fn = [m](auto& out, const auto& gc, const auto& tc, const auto& nc) {
    using S = std::decay_t<decltype(gc(0, 0))>;
    const MetricAlgebra<S> alg = metric_algebra(gc);
    // T^{mu nu} n_nu = g^{mu a} T_{a b} n^b
    Coords<S> tn{};
    for (int a = 0; a < m; ++a) {
      S s(0.0);
      for (int b = 0; b < m; ++b) s = s + tc(a, b) * nc(b);
      tn[a] = s;
    }
    for (int mu = 0; mu < m; ++mu) {
      S s(0.0);
      for (int a = 0; a < m; ++a) s = s + alg.inverse(mu, a) * tn[a];
      out(mu) = alg.sqrt_abs_det * s;
    }
  };
  return VectorDensityField(VectorField(Field::compose(m, "u", fn, g, T, n)));
}

VectorField current_closed_form_residual(const MetricField& g, const VectorDensityField& J,
                                         const FluidState& fluid) {
  const int m = g.dim();
  auto fn = [m](auto& out, const auto& gc, const auto& jc, const auto& nc, const auto& rc) {
    using S = std::decay_t<decltype(gc(0, 0))>;
    const MetricAlgebra<S> alg = metric_algebra(gc);
    for (int mu = 0; mu < m; ++mu) out(mu) = jc(mu) + alg.sqrt_abs_det * rc() * nc(mu);
  };
  return VectorField(Field::compose(m, "u", fn, g, J, fluid.n, fluid.rho));
}

ScalarField current_divergence(const DerivativeEngine& engine, const VectorDensityField& J) {
  const int m = J.dim();
  Field::EvalF64 f = [engine, J, m](const Coords<double>& x, Components<double>& out) {
    const Components<Jet> jj = engine.jet(J, at(x, m));
    double s = 0.0;
    for (int mu = 0; mu < m; ++mu) s += jj(mu).d[mu];
    out() = s;
  };
  return ScalarField(Field::from_values(m, "", std::move(f), engine.fd_rule()));
}

SliceSpec full_slice(const Chart& chart, int coordinate, double value, int nodes) {
  SliceSpec s;
  s.coordinate = coordinate;
  s.value = value;
  for (int i = 0; i < chart.dim(); ++i) {
    if (i == coordinate) continue;
    s.box.push_back(chart.interval(i));
    s.nodes.push_back(nodes);
  }
  return s;
}

QuadratureResult number_on_slice(const Chart& chart, const VectorDensityField& J,
                                 const SliceSpec& slice) {
  const int m = chart.dim();
  if (slice.coordinate < 0 || slice.coordinate >= m)
    throw Error(ErrorKind::domain_exit, "slice coordinate index out of range");
  if (!chart.interval(slice.coordinate).contains(slice.value))
    throw Error(ErrorKind::domain_exit,
                "slice value outside the range of '" + chart.name(slice.coordinate) + "'");
  if (static_cast<int>(slice.box.size()) != m - 1)
    throw Error(ErrorKind::domain_exit, "slice box needs one interval per remaining coordinate");
  for (int i = 0, j = 0; i < m; ++i) {
    if (i == slice.coordinate) continue;
    const Interval& iv = chart.interval(i);
    const Interval& b = slice.box[static_cast<std::size_t>(j++)];
    if (b.lo < iv.lo || b.hi > iv.hi)
      throw Error(ErrorKind::domain_exit, "slice box leaves the chart along '" + chart.name(i) + "'");
  }
  const int k = slice.coordinate;
  auto integrand = [&](std::span<const double> y) {
    Coords<double> x{};
    for (int i = 0, j = 0; i < m; ++i) x[i] = i == k ? slice.value : y[static_cast<std::size_t>(j++)];
    return J.field().eval(x)(k);
  };
  return simpson_box(integrand, slice.box, slice.nodes);
}

ConditionScalars condition_scalars(const DerivativeEngine& engine, const WeylBundle& bundle,
                                   const FluidState& fluid) {
  const int m = bundle.g.dim();
  const MetricField g = bundle.g;
  const ConnectionField gamma = bundle.gamma;
  const CovectorField A = bundle.A;
  const Tensor2UpField t_up = raise_both(g, stress_energy(g, fluid.n, fluid.p, fluid.rho));
  const FdRule rule = engine.fd_rule();

  Field::EvalF64 s1 = [engine, g, gamma, fluid, t_up, m](const Coords<double>& x,
                                                         Components<double>& out) {
    const Point p = at(x, m);
    const Components<Jet> gj = engine.jet(g, p);
    const Components<Jet> nj = engine.jet(fluid.n, p);
    const Components<double> dn = covariant_derivative_at(lower_jet(gj, nj), "d", gamma.eval(x));
    const Components<double> t = t_up.eval(x);
    double s = 0.0;
    for (int mu = 0; mu < m; ++mu)
      for (int nu = 0; nu < m; ++nu) s += t(mu, nu) * dn(mu, nu);
    out() = s;
  };
  Field::EvalF64 s2 = [g, A, fluid, t_up, m](const Coords<double>& x, Components<double>& out) {
    const Components<double> t = t_up.eval(x), a = A.eval(x);
    const Components<double> nl = lower(g.field().eval(x), fluid.n.eval(x));
    double s = 0.0;
    for (int mu = 0; mu < m; ++mu)
      for (int nu = 0; nu < m; ++nu) s += t(mu, nu) * a(mu) * nl(nu);
    out() = s;
  };
  const ScalarField div = metric_divergence(engine, g, fluid.n);
  Field::EvalF64 s1_cf = [div, fluid, m](const Coords<double>& x, Components<double>& out) {
    const double pr = fluid.p.eval(x)(), rho = fluid.rho.eval(x)(), phi = fluid.phi.eval(x)();
    out() = pr * div.eval(x)() + (rho + (m - 1) * pr) * phi;
  };
  Field::EvalF64 s2_cf = [fluid](const Coords<double>& x, Components<double>& out) {
    out() = fluid.rho.eval(x)() * fluid.phi.eval(x)();
  };

  ConditionScalars r;
  r.s1 = ScalarField(Field::from_values(m, "", std::move(s1), rule));
  r.s2 = ScalarField(Field::from_values(m, "", std::move(s2), rule));
  r.s1_closed_form = ScalarField(Field::from_values(m, "", std::move(s1_cf), rule));
  r.s2_closed_form = ScalarField(Field::from_values(m, "", std::move(s2_cf), rule));
  const ScalarField a1 = r.s1, b1 = r.s1_closed_form, a2 = r.s2, b2 = r.s2_closed_form;
  r.s1_residual = ScalarField(Field::from_values(
      m, "", [a1, b1](const Coords<double>& x, Components<double>& out) { out() = a1.eval(x)() - b1.eval(x)(); },
      rule));
  r.s2_residual = ScalarField(Field::from_values(
      m, "", [a2, b2](const Coords<double>& x, Components<double>& out) { out() = a2.eval(x)() - b2.eval(x)(); },
      rule));
  return r;
}

ScalarField current_identity_residual(const DerivativeEngine& engine, const WeylBundle& bundle,
                                      const Tensor2Field& T, const VectorField& n) {
  const int m = bundle.g.dim();
  const MetricField g = bundle.g;
  const ConnectionField gamma = bundle.gamma;
  const CovectorField A = bundle.A;
  const VectorDensityField J = particle_current(g, T, n);
  const Tensor2UpField t_up = raise_both(g, T);
  Field::EvalF64 f = [engine, g, gamma, A, J, t_up, n, m](const Coords<double>& x,
                                                          Components<double>& out) {
    const Point p = at(x, m);
    const Components<Jet> jj = engine.jet(J, p);
    double lhs = 0.0;
    for (int mu = 0; mu < m; ++mu) lhs += jj(mu).d[mu];

    const Components<Jet> gj = engine.jet(g, p);
    const Components<Jet> nj = engine.jet(n, p);
    const Components<Jet> tj = engine.jet(t_up, p);
    const Components<double> gam = gamma.eval(x);
    const double root = metric_algebra(values(gj)).sqrt_abs_det;
    const Components<Jet> nl = lower_jet(gj, nj);
    const Coords<double> w = divergence_up(tj, gam);
    const Components<double> dn = covariant_derivative_at(nl, "d", gam);
    const Components<double> a = A.eval(x);
    double w_n = 0.0, t_dn = 0.0, a_t_n = 0.0;
    for (int mu = 0; mu < m; ++mu) {
      w_n += w[mu] * nl(mu).v;
      for (int nu = 0; nu < m; ++nu) {
        t_dn += tj(mu, nu).v * dn(mu, nu);
        a_t_n += a(mu) * tj(mu, nu).v * nl(nu).v;
      }
    }
    out() = lhs - root * (w_n + t_dn) - m * root * a_t_n;
  };
  return ScalarField(Field::from_values(m, "", std::move(f), engine.fd_rule()));
}

}  // namespace weylfluid
