#include "weylfluid/connection.hpp"

namespace weylfluid {

const char* to_string(ConnectionKind kind) {
  switch (kind) {
    case ConnectionKind::levi_civita: return "levi-civita";
    case ConnectionKind::eps: return "eps";
    case ConnectionKind::external: return "external";
  }
  return "external";
}

ConnectionField::ConnectionField(Field coefficients, ConnectionKind kind)
    : f_(std::move(coefficients)), kind_(kind) {
  if (f_.variance() != variance::connection)
    throw Error(ErrorKind::construction, "connection coefficients need variance 'udd'");
}

Components<double> christoffel(const Components<Jet>& g_jet, const Components<double>& g_inverse) {
  const int m = g_jet.dim;
  // first kind: [b c, e] = ½(∂_b g_{ec} + ∂_c g_{eb} - ∂_e g_{bc})
  Components<double> first(m, 3);
  for (int e = 0; e < m; ++e)
    for (int b = 0; b < m; ++b)
      for (int c = b; c < m; ++c) {
        const double v = 0.5 * (g_jet(e, c).d[b] + g_jet(e, b).d[c] - g_jet(b, c).d[e]);
        first(e, b, c) = v;
        first(e, c, b) = v;
      }
  Components<double> gamma(m, 3);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = b; c < m; ++c) {
        double s = 0.0;
        for (int e = 0; e < m; ++e) s += g_inverse(a, e) * first(e, b, c);
        gamma(a, b, c) = s;
        gamma(a, c, b) = s;
      }
  return gamma;
}

void add_weyl_terms(Components<double>& gamma, const Components<double>& g,
                    const Components<double>& g_inverse, const Components<double>& A) {
  const int m = g.dim;
  Coords<double> a_up{};
  for (int a = 0; a < m; ++a)
    for (int e = 0; e < m; ++e) a_up[a] += g_inverse(a, e) * A(e);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        double k = g(b, c) * a_up[a];
        if (a == b) k -= A(c);
        if (a == c) k -= A(b);
        gamma(a, b, c) += k;
      }
}

ConnectionField levi_civita(const DerivativeEngine& engine, const MetricField& g) {
  const int m = g.dim();
  Field::EvalF64 f = [engine, g, m](const Coords<double>& x, Components<double>& out) {
    Point p;
    p.dim = m;
    p.x = x;
    const Components<Jet> gj = engine.jet(g, p);
    const MetricAlgebra<double> alg = metric_algebra(values(gj));
    out = christoffel(gj, alg.inverse);
  };
  return {Field::from_values(m, "udd", std::move(f), engine.fd_rule()), ConnectionKind::levi_civita};
}

ConnectionField eps_connection(const DerivativeEngine& engine, const MetricField& g,
                               const CovectorField& A) {
  const int m = g.dim();
  Field::EvalF64 f = [engine, g, A, m](const Coords<double>& x, Components<double>& out) {
    Point p;
    p.dim = m;
    p.x = x;
    const Components<Jet> gj = engine.jet(g, p);
    const Components<double> gv = values(gj);
    const MetricAlgebra<double> alg = metric_algebra(gv);
    out = christoffel(gj, alg.inverse);
    add_weyl_terms(out, gv, alg.inverse, A.eval(x));
  };
  return {Field::from_values(m, "udd", std::move(f), engine.fd_rule()), ConnectionKind::eps};
}

Components<double> covariant_derivative_at(const Components<Jet>& F, const std::string& variance,
                                           const Components<double>& gamma) {
  const int m = F.dim;
  const int rank = static_cast<int>(variance.size());
  if (rank > 2) throw Error(ErrorKind::capability, "covariant derivative supports rank <= 2");
  Components<double> out(m, rank + 1);
  if (rank == 0) {
    for (int mu = 0; mu < m; ++mu) out(mu) = F().d[mu];
    return out;
  }
  if (rank == 1) {
    const bool up = variance[0] == 'u';
    for (int mu = 0; mu < m; ++mu)
      for (int a = 0; a < m; ++a) {
        double s = F(a).d[mu];
        for (int l = 0; l < m; ++l) s += up ? gamma(a, mu, l) * F(l).v : -gamma(l, mu, a) * F(l).v;
        out(mu, a) = s;
      }
    return out;
  }
  const bool up0 = variance[0] == 'u';
  const bool up1 = variance[1] == 'u';
  for (int mu = 0; mu < m; ++mu)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double s = F(a, b).d[mu];
        for (int l = 0; l < m; ++l) {
          s += up0 ? gamma(a, mu, l) * F(l, b).v : -gamma(l, mu, a) * F(l, b).v;
          s += up1 ? gamma(b, mu, l) * F(a, l).v : -gamma(l, mu, b) * F(a, l).v;
        }
        out(mu, a, b) = s;
      }
  return out;
}

Field covariant_derivative(const DerivativeEngine& engine, const ConnectionField& gamma,
                           const Field& F) {
  if (F.rank() > 2) throw Error(ErrorKind::capability, "covariant derivative supports rank <= 2");
  const int m = F.dim();
  const std::string var = F.variance();
  Field::EvalF64 f = [engine, gamma, F, var, m](const Coords<double>& x, Components<double>& out) {
    Point p;
    p.dim = m;
    p.x = x;
    out = covariant_derivative_at(engine.jet(F, p), var, gamma.eval(x));
  };
  return Field::from_values(m, "d" + var, std::move(f), engine.fd_rule());
}

Coords<double> density_derivative_at(const Jet& density, const Components<double>& gamma) {
  const int m = gamma.dim;
  Coords<double> out{};
  for (int mu = 0; mu < m; ++mu) {
    double trace = 0.0;
    for (int l = 0; l < m; ++l) trace += gamma(l, l, mu);
    out[mu] = density.d[mu] - trace * density.v;
  }
  return out;
}

Tensor3Field nonmetricity_residual(const DerivativeEngine& engine, const ConnectionField& gamma,
                                   const MetricField& g, const CovectorField& A) {
  const int m = g.dim();
  Field::EvalF64 f = [engine, gamma, g, A, m](const Coords<double>& x, Components<double>& out) {
    Point p;
    p.dim = m;
    p.x = x;
    const Components<Jet> gj = engine.jet(g, p);
    const Components<double> dg = covariant_derivative_at(gj, "dd", gamma.eval(x));
    const Components<double> a = A.eval(x);
    out = Components<double>(m, 3);
    for (int mu = 0; mu < m; ++mu)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out(mu, i, j) = dg(mu, i, j) - 2.0 * a(mu) * gj(i, j).v;
  };
  return Tensor3Field(Field::from_values(m, "ddd", std::move(f), engine.fd_rule()));
}

CovectorField density_trace_residual(const DerivativeEngine& engine, const ConnectionField& gamma,
                                     const MetricField& g, const CovectorField& A) {
  const int m = g.dim();
  Field::EvalF64 f = [engine, gamma, g, A, m](const Coords<double>& x, Components<double>& out) {
    Point p;
    p.dim = m;
    p.x = x;
    const MetricAlgebra<Jet> alg = metric_algebra(engine.jet(g, p));
    const Coords<double> dw = density_derivative_at(alg.sqrt_abs_det, gamma.eval(x));
    const Components<double> a = A.eval(x);
    for (int mu = 0; mu < m; ++mu) out(mu) = dw[mu] - m * a(mu) * alg.sqrt_abs_det.v;
  };
  return CovectorField(Field::from_values(m, "d", std::move(f), engine.fd_rule()));
}

Field torsion(const ConnectionField& gamma) {
  const int m = gamma.dim();
  Field::EvalF64 f = [gamma, m](const Coords<double>& x, Components<double>& out) {
    const Components<double> c = gamma.eval(x);
    out = Components<double>(m, 3);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int e = 0; e < m; ++e) out(a, b, e) = c(a, b, e) - c(a, e, b);
  };
  return Field::from_values(m, "udd", std::move(f), FdRule{});
}

}  // namespace weylfluid
