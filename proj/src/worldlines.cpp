#include "weylfluid/worldlines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "weylfluid/metric.hpp"

namespace weylfluid {

namespace {

double euclidean_norm(const Coords<double>& v, int m) {
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += v[i] * v[i];
  return std::sqrt(s);
}

Coords<double> head(std::span<const double> y, int offset, int m) {
  Coords<double> c{};
  for (int i = 0; i < m; ++i) c[i] = y[static_cast<std::size_t>(offset + i)];
  return c;
}

StepperParams dense(StepperParams p) {
  p.max_step = std::min(p.max_step, kDenseStep);
  p.initial_step = std::min(p.initial_step, kDenseStep);
  return p;
}

OdeStop leaves(const Chart& chart) {
  return [&chart](double, std::span<const double> y) {
    return chart.first_exit(head(y, 0, chart.dim())) >= 0;
  };
}

void check_start(const Chart& chart, const Point& x0, const Coords<double>& v0) {
  if (x0.dim != chart.dim()) throw Error(ErrorKind::config, "start point dimension does not match the chart");
  if (!chart.contains(x0)) throw Error(ErrorKind::domain_exit, "start point lies outside the chart");
  if (!(euclidean_norm(v0, chart.dim()) > 0.0))
    throw Error(ErrorKind::config, "initial tangent must be nonzero");
}

WorldlinePath run_second_order(const Chart& chart, const ConnectionField& gamma, const Point& x0,
                               const Coords<double>& v0, double s_max, const StepperParams& params) {
  check_start(chart, x0, v0);
  const int m = chart.dim();
  OdeRhs rhs = [m, &gamma](double, std::span<const double> y, std::span<double> dy) {
    const Coords<double> x = head(y, 0, m);
    const Components<double> G = gamma.eval(x);
    double speed = 0.0;
    for (int a = 0; a < m; ++a) {
      const double va = y[static_cast<std::size_t>(m + a)];
      dy[static_cast<std::size_t>(a)] = va;
      speed += va * va;
      double acc = 0.0;
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) acc += G(a, b, c) * y[static_cast<std::size_t>(m + b)] * y[static_cast<std::size_t>(m + c)];
      dy[static_cast<std::size_t>(m + a)] = -acc;
    }
    dy[static_cast<std::size_t>(2 * m)] = std::sqrt(speed);
  };
  std::vector<double> y0(static_cast<std::size_t>(2 * m + 1), 0.0);
  for (int i = 0; i < m; ++i) {
    y0[static_cast<std::size_t>(i)] = x0[i];
    y0[static_cast<std::size_t>(m + i)] = v0[i];
  }
  OdeSolution sol = integrate_ode(rhs, 0.0, y0, s_max, dense(params), leaves(chart));
  const bool exited = sol.stopped;
  return WorldlinePath(m, std::move(sol), exited);
}

}  // namespace

WorldlinePath::WorldlinePath(int dim, OdeSolution solution, bool exited)
    : dim_(dim), solution_(std::move(solution)), exited_(exited) {}

WorldlineSample WorldlinePath::sample(std::size_t i) const {
  const OdeSample& o = solution_.samples.at(i);
  WorldlineSample w;
  w.s = o.s;
  w.x.dim = dim_;
  w.x.x = head(o.y, 0, dim_);
  w.v = head(o.y, dim_, dim_);
  w.arc = o.y[static_cast<std::size_t>(2 * dim_)];
  return w;
}

Coords<double> WorldlinePath::acceleration(std::size_t i) const {
  return head(solution_.samples.at(i).dy, dim_, dim_);
}

double WorldlinePath::arc_length() const {
  return solution_.samples.empty() ? 0.0 : solution_.samples.back().y[static_cast<std::size_t>(2 * dim_)];
}

WorldlineSample WorldlinePath::at(double s) const {
  const std::vector<double> y = solution_.interpolate(s);
  WorldlineSample w;
  w.s = s;
  w.x.dim = dim_;
  w.x.x = head(y, 0, dim_);
  w.v = head(y, dim_, dim_);
  w.arc = y[static_cast<std::size_t>(2 * dim_)];
  return w;
}

Point WorldlinePath::position_at_arc(double sigma) const {
  const auto& S = solution_.samples;
  const std::size_t arc = static_cast<std::size_t>(2 * dim_);
  auto it = std::lower_bound(S.begin(), S.end(), sigma,
                             [arc](const OdeSample& a, double v) { return a.y[arc] < v; });
  if (it == S.begin()) return sample(0).x;
  if (it == S.end()) return sample(S.size() - 1).x;
  double lo = std::prev(it)->s, hi = it->s;
  for (int iter = 0; iter < 80 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++iter) {
    const double mid = 0.5 * (lo + hi);
    (solution_.interpolate(mid, arc) < sigma ? lo : hi) = mid;
  }
  return at(0.5 * (lo + hi)).x;
}

void WorldlinePath::write_csv(std::ostream& out, const std::vector<std::string>& names) const {
  out << 's';
  for (int i = 0; i < dim_; ++i) out << ',' << names.at(static_cast<std::size_t>(i));
  for (int i = 0; i < dim_; ++i) out << ",d" << names.at(static_cast<std::size_t>(i));
  out << '\n';
  char buf[32];
  for (std::size_t k = 0; k < size(); ++k) {
    const WorldlineSample w = sample(k);
    std::snprintf(buf, sizeof buf, "%.17g", w.s);
    out << buf;
    for (int i = 0; i < dim_; ++i) {
      std::snprintf(buf, sizeof buf, ",%.17g", w.x[i]);
      out << buf;
    }
    for (int i = 0; i < dim_; ++i) {
      std::snprintf(buf, sizeof buf, ",%.17g", w.v[i]);
      out << buf;
    }
    out << '\n';
  }
}

WorldlinePath integrate_autoparallel(const Chart& chart, const ConnectionField& gamma, const Point& x0,
                                     const Coords<double>& v0, double s_max, const StepperParams& params) {
  if (gamma.dim() != chart.dim()) throw Error(ErrorKind::config, "connection dimension does not match the chart");
  return run_second_order(chart, gamma, x0, v0, s_max, params);
}

WorldlinePath integrate_null_geodesic(const DerivativeEngine& engine, const MetricField& g,
                                      const Point& x0, const Coords<double>& k0, double s_max,
                                      const StepperParams& params, const NullGeodesicSettings& settings) {
  const int m = g.dim();
  Components<double> k(m, 1);
  for (int i = 0; i < m; ++i) k(i) = k0[i];
  const double q0 = inner(g(x0), k, k);
  if (std::abs(q0) > settings.initial_null_tolerance)
    throw Error(ErrorKind::config, "initial tangent is not null: g(k,k) = " + std::to_string(q0));
  const ConnectionField lc = levi_civita(engine, g);
  WorldlinePath path = run_second_order(engine.chart(), lc, x0, k0, s_max, params);
  for (std::size_t i = 0; i < path.size(); ++i) {
    const WorldlineSample w = path.sample(i);
    for (int a = 0; a < m; ++a) k(a) = w.v[a];
    const double q = inner(g(w.x), k, k);
    if (!(std::abs(q) <= settings.drift_bound))
      throw Error(ErrorKind::integrator_accuracy,
                  "null first integral drifted to " + std::to_string(q) + " at s = " + std::to_string(w.s));
  }
  return path;
}

WorldlinePath integrate_flow_line(const Chart& chart, const VectorField& n, const Point& x0, double s_max,
                                  const StepperParams& params) {
  const int m = chart.dim();
  const Components<double> n0 = n(x0);
  Coords<double> v0{};
  for (int i = 0; i < m; ++i) v0[i] = n0(i);
  check_start(chart, x0, v0);
  // Same state layout as the second-order paths; the tangent slot tracks n(x).
  OdeRhs rhs = [m, &n](double, std::span<const double> y, std::span<double> dy) {
    const Coords<double> x = head(y, 0, m);
    const Components<double> nv = n.eval(x);
    double speed = 0.0;
    for (int a = 0; a < m; ++a) {
      dy[static_cast<std::size_t>(a)] = nv(a);
      dy[static_cast<std::size_t>(m + a)] = 0.0;
      speed += nv(a) * nv(a);
    }
    dy[static_cast<std::size_t>(2 * m)] = std::sqrt(speed);
  };
  std::vector<double> y0(static_cast<std::size_t>(2 * m + 1), 0.0);
  for (int i = 0; i < m; ++i) {
    y0[static_cast<std::size_t>(i)] = x0[i];
    y0[static_cast<std::size_t>(m + i)] = v0[i];
  }
  OdeSolution sol = integrate_ode(rhs, 0.0, y0, s_max, dense(params), leaves(chart));
  for (OdeSample& o : sol.samples) {
    const Components<double> nv = n.eval(head(o.y, 0, m));
    for (int a = 0; a < m; ++a) o.y[static_cast<std::size_t>(m + a)] = nv(a);
  }
  const bool exited = sol.stopped;
  return WorldlinePath(m, std::move(sol), exited);
}

NullCheckReport eps_null_check(const MetricField& g, const ConnectionField& gamma, const WorldlinePath& path) {
  const int m = path.dim();
  NullCheckReport r;
  Components<double> k(m, 1);
  for (std::size_t i = 0; i < path.size(); ++i) {
    const WorldlineSample w = path.sample(i);
    const Coords<double> a = path.acceleration(i);
    const Components<double> G = gamma(w.x);
    Coords<double> D{};
    for (int e = 0; e < m; ++e) {
      double acc = a[e];
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) acc += G(e, b, c) * w.v[b] * w.v[c];
      D[e] = acc;
    }
    double kk = 0.0, dk = 0.0;
    for (int e = 0; e < m; ++e) {
      kk += w.v[e] * w.v[e];
      dk += D[e] * w.v[e];
    }
    Coords<double> orth{};
    for (int e = 0; e < m; ++e) orth[e] = D[e] - dk / kk * w.v[e];
    for (int e = 0; e < m; ++e) k(e) = w.v[e];
    r.max_orthogonal = std::max(r.max_orthogonal, euclidean_norm(orth, m));
    r.max_parallel = std::max(r.max_parallel, std::abs(dk) / kk);
    r.max_null_drift = std::max(r.max_null_drift, std::abs(inner(g(w.x), k, k)));
    ++r.samples;
  }
  return r;
}

TrajectoryComparison trajectory_compare(const WorldlinePath& a, const WorldlinePath& b, int resolution) {
  if (a.dim() != b.dim() || a.size() == 0 || b.size() == 0)
    throw Error(ErrorKind::comparison, "paths are not comparable");
  const int m = a.dim();
  const Point a0 = a.sample(0).x, b0 = b.sample(0).x;
  Coords<double> d0{};
  for (int i = 0; i < m; ++i) d0[i] = a0[i] - b0[i];
  if (euclidean_norm(d0, m) > 1e-12) throw Error(ErrorKind::comparison, "paths do not share a start point");
  const double common = std::min(a.arc_length(), b.arc_length());
  if (!(common > 0.0)) throw Error(ErrorKind::comparison, "paths have no common arc range");
  TrajectoryComparison r;
  r.common_arc = common;
  for (int k = 0; k <= resolution; ++k) {
    const double sigma = common * k / resolution;
    const Point pa = a.position_at_arc(sigma), pb = b.position_at_arc(sigma);
    Coords<double> d{};
    for (int i = 0; i < m; ++i) d[i] = pa[i] - pb[i];
    r.max_deviation = std::max(r.max_deviation, euclidean_norm(d, m));
  }
  return r;
}

}  // namespace weylfluid
