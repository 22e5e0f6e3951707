#include "weylfluid/metric.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <type_traits>

#include "weylfluid/linalg.hpp"

namespace weylfluid {

namespace {

std::string describe(const Coords<double>& x, int dim) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < dim; ++i) os << (i ? ", " : "") << x[i];
  os << ')';
  return os.str();
}

}  // namespace

MetricAlgebra<double> metric_algebra(const Components<double>& g) {
  MetricAlgebra<double> out;
  const double det = linalg::invert(g, out.inverse);
  out.sqrt_abs_det = std::sqrt(std::abs(det));
  return out;
}

MetricAlgebra<Jet> metric_algebra(const Components<Jet>& g) {
  MetricAlgebra<Jet> out;
  const Jet det = linalg::invert(g, out.inverse);
  out.sqrt_abs_det = math::sqrt(math::abs(det));
  return out;
}

MetricData metric_data(const MetricField& g, const Point& x) {
  MetricData d;
  d.g = g(x);
  d.det = linalg::invert(d.g, d.inverse);
  d.sqrt_abs_det = std::sqrt(std::abs(d.det));
  return d;
}

Signature signature_at(const MetricField& g, const Point& x) {
  const Components<double> c = g(x);
  const int m = c.dim;
  Eigen::MatrixXd mat(m, m);
  double scale = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      mat(a, b) = 0.5 * (c(a, b) + c(b, a));
      scale = std::max(scale, std::abs(c(a, b)));
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat, Eigen::EigenvaluesOnly);
  Signature s;
  for (int i = 0; i < m; ++i) {
    const double ev = solver.eigenvalues()(i);
    if (std::abs(ev) <= linalg::kSingularFloor * scale) ++s.zero;
    else if (ev < 0.0) ++s.negative;
    else ++s.positive;
  }
  return s;
}

MetricValidation validate_metric(const MetricField& g, const std::vector<Point>& points) {
  MetricValidation v;
  for (const Point& p : points) {
    const MetricData d = metric_data(g, p);
    const int m = d.g.dim;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        v.symmetry_residual = std::max(v.symmetry_residual, std::abs(d.g(a, b) - d.g(b, a)));
        double s = 0.0;
        for (int e = 0; e < m; ++e) s += d.inverse(a, e) * d.g(e, b);
        v.inverse_residual = std::max(v.inverse_residual, std::abs(s - (a == b ? 1.0 : 0.0)));
      }
    if (!signature_at(g, p).lorentzian()) v.signature_ok = false;
  }
  return v;
}

double inner(const Components<double>& g, const Components<double>& u, const Components<double>& v) {
  double s = 0.0;
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b) s += g(a, b) * u(a) * v(b);
  return s;
}

Components<double> lower(const Components<double>& g, const Components<double>& u) {
  Components<double> out(g.dim, 1);
  for (int a = 0; a < g.dim; ++a) {
    double s = 0.0;
    for (int b = 0; b < g.dim; ++b) s += g(a, b) * u(b);
    out(a) = s;
  }
  return out;
}

VectorField normalize_timelike(const MetricField& g, const VectorField& u,
                               const std::vector<Point>& points) {
  const int m = g.dim();
  auto fn = [m](auto& out, const auto& gc, const auto& uc) {
    using S = std::decay_t<decltype(gc(0, 0))>;
    S norm(0.0);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) norm = norm + gc(a, b) * uc(a) * uc(b);
    if (!(math::value(norm) < -kTimelikeEpsilon))
      throw Error(ErrorKind::not_timelike, "vector field is not timelike (g(u,u) = " +
                                               std::to_string(math::value(norm)) + ")");
    const auto inv = 1.0 / math::sqrt(-norm);
    for (int a = 0; a < m; ++a) out(a) = uc(a) * inv;
  };
  VectorField n(Field::compose(m, "u", fn, g, u));
  for (const Point& p : points) {
    const Components<double> gc = g(p), uc = u(p);
    if (!(inner(gc, uc, uc) < -kTimelikeEpsilon))
      throw Error(ErrorKind::not_timelike, "vector field is not timelike at " + describe(p.x, m));
  }
  return n;
}

void require_lorentzian_on_box(const MetricField& g, const Chart& chart, int per_axis) {
  const int m = chart.dim();
  int total = 1;
  for (int i = 0; i < m; ++i) total *= per_axis;
  for (int flat = 0; flat < total; ++flat) {
    Point p;
    p.dim = m;
    int rest = flat;
    for (int i = m - 1; i >= 0; --i) {
      const int k = rest % per_axis;
      rest /= per_axis;
      const Interval& iv = chart.interval(i);
      p[i] = iv.lo + iv.length() * k / (per_axis - 1);
    }
    if (!signature_at(g, p).lorentzian())
      throw Error(ErrorKind::signature, "metric is not Lorentzian at " + describe(p.x, m));
  }
}

}  // namespace weylfluid
