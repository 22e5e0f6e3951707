#include "weylfluid/conformal.hpp"

#include <cmath>
#include <sstream>

#include "parallel.hpp"

namespace weylfluid {

namespace {

Point at(const Coords<double>& x, int m) {
  Point p;
  p.dim = m;
  p.x = x;
  return p;
}

std::string describe(const Coords<double>& x, int m) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < m; ++i) os << (i ? ", " : "") << x[i];
  os << ')';
  return os.str();
}

/// Closed-form inputs are differentiated exactly even when the caller's engine
/// uses differences, so characteristics can run up to the chart faces.
DerivativeEngine solver_engine(const DerivativeEngine& engine, const MetricField& g, const VectorField& n) {
  if (g.field().origin() != FieldOrigin::closed_form || n.field().origin() != FieldOrigin::closed_form)
    return engine;
  DerivativeSettings s = engine.settings();
  s.mode = DerivativeMode::forward_dual;
  return DerivativeEngine(engine.chart(), s);
}

}  // namespace

ConformalFactor ConformalFactor::from_log(ScalarField ln_phi) {
  ConformalFactor f;
  const int m = ln_phi.dim();
  f.factor_ = ScalarField(Field::compose(
      m, "", [](auto& out, const auto& l) { out() = math::exp(l()); }, ln_phi));
  f.log_ = std::move(ln_phi);
  return f;
}

ConformalFactor ConformalFactor::from_factor(ScalarField phi, const std::vector<Point>& samples) {
  for (const Point& p : samples) {
    const double v = phi(p)();
    if (!(v > 0.0))
      throw Error(ErrorKind::gauge, "conformal factor is not positive at " + describe(p.x, p.dim));
  }
  ConformalFactor f;
  const int m = phi.dim();
  f.log_ = ScalarField(Field::compose(
      m, "", [](auto& out, const auto& v) { out() = math::log(v()); }, phi));
  f.factor_ = std::move(phi);
  return f;
}

ConformalFactor ConformalFactor::product(const ConformalFactor& a, const ConformalFactor& b) {
  const int m = a.log().dim();
  return from_log(ScalarField(Field::compose(
      m, "", [](auto& out, const auto& x, const auto& y) { out() = x() + y(); }, a.log(), b.log())));
}

FluidBundle conformal_rescale(const DerivativeEngine& engine, const FluidBundle& bundle,
                              const ConformalFactor& factor, const ConformalWeights& weights) {
  const int m = bundle.g.dim();
  const ScalarField& phi_f = factor.factor();
  const ScalarField& ln_phi = factor.log();
  const double w = weights.w;

  FluidBundle out;
  out.g = MetricField(Tensor2Field(Field::compose(
      m, "dd",
      [m](auto& o, const auto& g, const auto& f) {
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) o(a, b) = f() * f() * g(a, b);
      },
      bundle.g, phi_f)));
  out.fluid.n = VectorField(Field::compose(
      m, "u",
      [m](auto& o, const auto& n, const auto& f) {
        for (int a = 0; a < m; ++a) o(a) = n(a) / f();
      },
      bundle.fluid.n, phi_f));
  auto weighted = [w](auto& o, const auto& v, const auto& l) { o() = math::exp(w * l()) * v(); };
  out.fluid.p = ScalarField(Field::compose(m, "", weighted, bundle.fluid.p, ln_phi));
  out.fluid.rho = ScalarField(Field::compose(m, "", weighted, bundle.fluid.rho, ln_phi));

  const CovectorField A = bundle.A;
  Field::EvalF64 a_new = [engine, A, ln_phi, m](const Coords<double>& x, Components<double>& o) {
    const Components<Jet> l = engine.jet(ln_phi, at(x, m));
    const Components<double> a = A.eval(x);
    for (int mu = 0; mu < m; ++mu) o(mu) = a(mu) + l().d[mu];
  };
  out.A = CovectorField(Field::from_values(m, "d", std::move(a_new), engine.fd_rule()));

  const VectorField n = bundle.fluid.n;
  const ScalarField phi = bundle.fluid.phi;
  Field::EvalF64 phi_new = [engine, n, phi, ln_phi, m](const Coords<double>& x, Components<double>& o) {
    const Components<Jet> l = engine.jet(ln_phi, at(x, m));
    const Components<double> nv = n.eval(x);
    double n_dl = 0.0;
    for (int mu = 0; mu < m; ++mu) n_dl += nv(mu) * l().d[mu];
    o() = (phi.eval(x)() - n_dl) / std::exp(l().v);
  };
  out.fluid.phi = ScalarField(Field::from_values(m, "", std::move(phi_new), engine.fd_rule()));
  return out;
}

Tensor2Field rescaled_stress_energy_residual(const Tensor2Field& T, const Tensor2Field& T_rescaled,
                                             const ConformalFactor& factor, int dim) {
  const double e = 3.0 - dim;
  return Tensor2Field(Field::compose(
      dim, "dd",
      [dim, e](auto& o, const auto& t, const auto& tr, const auto& l) {
        const auto scale = math::exp(e * l());
        for (int a = 0; a < dim; ++a)
          for (int b = 0; b < dim; ++b) o(a, b) = tr(a, b) - scale * t(a, b);
      },
      T, T_rescaled, factor.log()));
}

VectorField current_invariance_residual(const VectorDensityField& J,
                                        const VectorDensityField& J_rescaled) {
  const int m = J.dim();
  return VectorField(Field::compose(
      m, "u",
      [m](auto& o, const auto& a, const auto& b) {
        for (int i = 0; i < m; ++i) o(i) = b(i) - a(i);
      },
      J, J_rescaled));
}

GridScalar::GridScalar(std::vector<Interval> box, int nodes_per_axis, std::vector<double> values)
    : box_(std::move(box)), nodes_(nodes_per_axis), values_(std::move(values)) {
  if (nodes_ < 4) throw Error(ErrorKind::config, "memo grid needs at least 4 nodes per axis");
  std::size_t total = 1;
  for (std::size_t i = 0; i < box_.size(); ++i) total *= static_cast<std::size_t>(nodes_);
  if (values_.size() != total) throw Error(ErrorKind::construction, "grid value count mismatch");
}

double GridScalar::node_coordinate(int axis, int k) const {
  const Interval& iv = box_[static_cast<std::size_t>(axis)];
  return iv.lo + iv.length() * k / (nodes_ - 1);
}

Coords<double> GridScalar::node(std::size_t flat) const {
  Coords<double> x{};
  for (int i = dim() - 1; i >= 0; --i) {
    x[i] = node_coordinate(i, static_cast<int>(flat % static_cast<std::size_t>(nodes_)));
    flat /= static_cast<std::size_t>(nodes_);
  }
  return x;
}

double GridScalar::operator()(const Coords<double>& x) const {
  const int m = dim();
  std::array<int, kMaxDim> start{};
  std::array<std::array<double, 4>, kMaxDim> weight{};
  for (int i = 0; i < m; ++i) {
    const Interval& iv = box_[static_cast<std::size_t>(i)];
    if (!iv.contains(x[i]))
      throw Error(ErrorKind::domain_exit, "interpolation point leaves the memo grid along coordinate " +
                                              std::to_string(i));
    const double spacing = iv.length() / (nodes_ - 1);
    const double u = (x[i] - iv.lo) / spacing;
    const int cell = std::min(static_cast<int>(u), nodes_ - 2);
    start[i] = std::clamp(cell - 1, 0, nodes_ - 4);
    for (int j = 0; j < 4; ++j) {
      double w = 1.0;
      for (int l = 0; l < 4; ++l)
        if (l != j) w *= (u - (start[i] + l)) / static_cast<double>(j - l);
      weight[i][j] = w;
    }
  }
  int stencil = 1;
  for (int i = 0; i < m; ++i) stencil *= 4;
  double sum = 0.0;
  for (int s = 0; s < stencil; ++s) {
    int rest = s;
    double w = 1.0;
    std::size_t flat = 0;
    for (int i = 0; i < m; ++i) {
      const int j = rest % 4;
      rest /= 4;
      w *= weight[i][j];
      flat = flat * static_cast<std::size_t>(nodes_) + static_cast<std::size_t>(start[i] + j);
    }
    sum += w * values_[flat];
  }
  return sum;
}

PreferredFrameSolver::PreferredFrameSolver(const DerivativeEngine& engine, MetricField g, VectorField n,
                                           int slice_coordinate, double slice_value,
                                           FrameSolverParams params)
    : engine_(solver_engine(engine, g, n)), g_(std::move(g)), n_(std::move(n)), k_(slice_coordinate), c_(slice_value),
      params_(params) {
  const Chart& chart = engine_.chart();
  if (k_ < 0 || k_ >= chart.dim())
    throw Error(ErrorKind::config, "seed slice coordinate out of range");
  if (!chart.interval(k_).contains(c_))
    throw Error(ErrorKind::config, "seed slice lies outside the chart");
}

double PreferredFrameSolver::solve_at(const Point& x) const {
  const Chart& chart = engine_.chart();
  const int m = chart.dim();
  if (x[k_] == c_) return 0.0;
  // independent variable τ = x^k; state = other coordinates followed by the
  // accumulated change of lnΦ
  std::vector<int> others;
  for (int i = 0; i < m; ++i)
    if (i != k_) others.push_back(i);
  const double inv_m1 = 1.0 / (m - 1);
  OdeRhs rhs = [&](double tau, std::span<const double> y, std::span<double> dy) {
    Coords<double> c{};
    c[k_] = tau;
    for (int j = 0; j < m - 1; ++j) c[others[j]] = y[j];
    if (chart.first_exit(c) >= 0) throw Error(ErrorKind::domain_exit, "characteristic left the chart");
    const Point p = at(c, m);
    const Components<Jet> nj = engine_.jet(n_, p);
    const double nk = nj(k_).v;
    if (!(nk > 0.0))
      throw Error(ErrorKind::transversality, "flow is not transverse to the seed slice at " + describe(c, m));
    for (int j = 0; j < m - 1; ++j) dy[j] = nj(others[j]).v / nk;
    dy[m - 1] = -metric_divergence_at(engine_.jet(g_, p), nj) * inv_m1 / nk;
  };
  std::vector<double> y0(static_cast<std::size_t>(m), 0.0);
  for (int j = 0; j < m - 1; ++j) y0[j] = x[others[j]];
  const OdeSolution sol = integrate_ode(rhs, x[k_], y0, c_, params_.stepper);
  if (sol.stopped)
    throw Error(ErrorKind::reachability,
                "characteristic through " + describe(x.x, m) + " leaves the chart before the seed slice");
  return -sol.samples.back().y[m - 1];
}

GridScalar PreferredFrameSolver::solve_grid() const {
  const Chart& chart = engine_.chart();
  const int m = chart.dim();
  const int n = params_.nodes_per_axis;
  std::size_t total = 1;
  for (int i = 0; i < m; ++i) total *= static_cast<std::size_t>(n);
  std::vector<double> values(total);
  GridScalar layout(chart.box(), n, std::vector<double>(total, 0.0));
  detail::parallel_for(total, [&](std::size_t flat) {
    values[flat] = solve_at(at(layout.node(flat), m));
  });
  return GridScalar(chart.box(), n, std::move(values));
}

ConformalFactor PreferredFrameSolver::factor_from_grid(const GridScalar& grid) const {
  const int m = grid.dim();
  auto shared = std::make_shared<const GridScalar>(grid);
  Field::EvalF64 f = [shared](const Coords<double>& x, Components<double>& out) { out() = (*shared)(x); };
  FdRule rule{params_.fd_step, 0, grid.box()};
  return ConformalFactor::from_log(ScalarField(Field::from_values(m, "", std::move(f), rule, FieldOrigin::numeric)));
}

PreferredFrame preferred_frame(const DerivativeEngine& engine, const MetricField& g, const VectorField& n,
                               int slice_coordinate, double slice_value, const FrameSolverParams& params) {
  PreferredFrameSolver solver(engine, g, n, slice_coordinate, slice_value, params);
  GridScalar grid = solver.solve_grid();
  ConformalFactor factor = solver.factor_from_grid(grid);
  return {std::move(grid), std::move(factor)};
}

ScalarField transport_residual(const DerivativeEngine& engine, const MetricField& g, const VectorField& n,
                               const ConformalFactor& factor) {
  const int m = g.dim();
  const ScalarField ln_phi = factor.log();
  Field::EvalF64 f = [engine, g, n, ln_phi, m](const Coords<double>& x, Components<double>& out) {
    const Point p = at(x, m);
    const Components<Jet> nj = engine.jet(n, p);
    const Components<Jet> l = engine.jet(ln_phi, p);
    double s = 0.0;
    for (int e = 0; e < m; ++e) s += nj(e).v * l().d[e];
    out() = s + metric_divergence_at(engine.jet(g, p), nj) / (m - 1);
  };
  return ScalarField(Field::from_values(m, "", std::move(f), engine.fd_rule()));
}

ScalarField incompressibility_residual(const DerivativeEngine& engine, const MetricField& g_rescaled,
                                       const VectorField& n_rescaled) {
  return metric_divergence(engine, g_rescaled, n_rescaled);
}

CovectorField preferred_weyl_covector(const DerivativeEngine& engine, const MetricField& g_rescaled,
                                      const VectorField& n_rescaled) {
  return fluid_covector(engine, g_rescaled, n_rescaled, constant_scalar(g_rescaled.dim(), 0.0));
}

}  // namespace weylfluid
