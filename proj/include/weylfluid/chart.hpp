#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "weylfluid/jet.hpp"

namespace weylfluid {

template <class S>
using Coords = std::array<S, kMaxDim>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// A point of a chart. Coordinates past `dim` are zero.
struct Point {
  int dim = 0;
  Coords<double> x{};

  Point() = default;
  Point(std::initializer_list<double> coords);
  double operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return x[static_cast<std::size_t>(i)]; }
};

/// Coordinate box on which every field lives.
class Chart {
 public:
  Chart(std::vector<std::string> names, std::vector<Interval> box, double margin = 0.1);

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
  const Interval& interval(int i) const { return box_[static_cast<std::size_t>(i)]; }
  const std::vector<Interval>& box() const { return box_; }
  double margin() const { return margin_; }

  bool contains(const Point& p) const;
  /// Index of the first coordinate of `p` outside the box, or -1.
  int first_exit(const Coords<double>& x) const;

  /// Interior box shrunk by the sampling margin.
  Interval interior(int i) const;

  Point make_point(std::initializer_list<double> coords) const;

 private:
  std::vector<std::string> names_;
  std::vector<Interval> box_;
  double margin_;
};

struct SamplingSettings {
  int grid_per_axis = 5;
  int random_points = 64;
  std::uint64_t seed = 7;
};

/// Deterministic test points: a uniform interior grid followed by seeded
/// pseudo-random interior points.
std::vector<Point> sample_points(const Chart& chart, const SamplingSettings& settings);

}  // namespace weylfluid
