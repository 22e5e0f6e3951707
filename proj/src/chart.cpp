#include "weylfluid/chart.hpp"

#include <random>

#include "weylfluid/errors.hpp"

namespace weylfluid {

Point::Point(std::initializer_list<double> coords) : dim(static_cast<int>(coords.size())) {
  if (dim > kMaxDim) throw Error(ErrorKind::construction, "point has too many coordinates");
  std::size_t i = 0;
  for (double c : coords) x[i++] = c;
}

Chart::Chart(std::vector<std::string> names, std::vector<Interval> box, double margin)
    : names_(std::move(names)), box_(std::move(box)), margin_(margin) {
  const int m = dim();
  if (m < 2 || m > kMaxDim)
    throw Error(ErrorKind::construction,
                "chart dimension must lie in [2, " + std::to_string(kMaxDim) + "]");
  if (box_.size() != names_.size())
    throw Error(ErrorKind::construction, "chart needs one interval per coordinate");
  for (int i = 0; i < m; ++i) {
    if (!(box_[i].length() > 0.0))
      throw Error(ErrorKind::construction, "interval of '" + names_[i] + "' has no length");
  }
  if (!(margin_ >= 0.0 && margin_ < 0.4))
    throw Error(ErrorKind::construction, "sampling margin must lie in [0, 0.4)");
}

bool Chart::contains(const Point& p) const { return p.dim == dim() && first_exit(p.x) < 0; }

int Chart::first_exit(const Coords<double>& x) const {
  for (int i = 0; i < dim(); ++i)
    if (!box_[i].contains(x[i])) return i;
  return -1;
}

Interval Chart::interior(int i) const {
  const Interval& iv = box_[static_cast<std::size_t>(i)];
  const double pad = margin_ * iv.length();
  return {iv.lo + pad, iv.hi - pad};
}

Point Chart::make_point(std::initializer_list<double> coords) const {
  Point p(coords);
  if (p.dim != dim()) throw Error(ErrorKind::construction, "point dimension mismatch");
  if (!contains(p)) throw Error(ErrorKind::domain_exit, "point lies outside the chart box");
  return p;
}

std::vector<Point> sample_points(const Chart& chart, const SamplingSettings& settings) {
  const int m = chart.dim();
  std::vector<Point> points;
  const int n = settings.grid_per_axis;
  if (n > 0) {
    int total = 1;
    for (int i = 0; i < m; ++i) total *= n;
    points.reserve(static_cast<std::size_t>(total + settings.random_points));
    for (int flat = 0; flat < total; ++flat) {
      Point p;
      p.dim = m;
      int rest = flat;
      for (int i = m - 1; i >= 0; --i) {
        const int k = rest % n;
        rest /= n;
        const Interval iv = chart.interior(i);
        p[i] = n == 1 ? 0.5 * (iv.lo + iv.hi) : iv.lo + iv.length() * k / (n - 1);
      }
      points.push_back(p);
    }
  }
  std::mt19937_64 rng(settings.seed);
  for (int r = 0; r < settings.random_points; ++r) {
    Point p;
    p.dim = m;
    for (int i = 0; i < m; ++i) {
      const Interval iv = chart.interior(i);
      p[i] = iv.lo + iv.length() * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    }
    points.push_back(p);
  }
  return points;
}

}  // namespace weylfluid
