#pragma once

#include <vector>

#include "weylfluid/derivative.hpp"
#include "weylfluid/field.hpp"

namespace weylfluid {

/// Lorentzian metric g_{mu nu} with signature (-,+,...,+).
class MetricField {
 public:
  MetricField() = default;
  explicit MetricField(Tensor2Field g) : g_(std::move(g)) {}

  /// Metric from a generic component function that fills the upper triangle
  /// (a <= b); the lower triangle is mirrored, so symmetry holds exactly.
  template <class Fn>
  static MetricField upper_triangle(int dim, Fn fn) {
    return MetricField(Tensor2Field(Field::closed_form(dim, "dd", [fn](const auto& x, auto& out) {
      fn(x, out);
      for (int a = 0; a < out.dim; ++a)
        for (int b = 0; b < a; ++b) out(a, b) = out(b, a);
    })));
  }

  const Tensor2Field& tensor() const { return g_; }
  const Field& field() const { return g_.field(); }
  int dim() const { return g_.dim(); }
  Components<double> operator()(const Point& p) const { return g_(p); }

 private:
  Tensor2Field g_;
};

struct MetricData {
  Components<double> g;        // g_{mu nu}
  Components<double> inverse;  // g^{mu nu}
  double det = 0.0;
  double sqrt_abs_det = 0.0;
};

/// Inverse metric and volume density √|det g| at a point.
MetricData metric_data(const MetricField& g, const Point& x);

/// Jet-valued inverse and √|det g|, used where derivatives of densities are needed.
template <class S>
struct MetricAlgebra {
  Components<S> inverse;
  S sqrt_abs_det;
};
MetricAlgebra<double> metric_algebra(const Components<double>& g);
MetricAlgebra<Jet> metric_algebra(const Components<Jet>& g);

/// Number of negative and positive eigenvalues of g at x.
struct Signature {
  int negative = 0;
  int positive = 0;
  int zero = 0;
  bool lorentzian() const { return negative == 1 && zero == 0; }
};
Signature signature_at(const MetricField& g, const Point& x);

struct MetricValidation {
  double symmetry_residual = 0.0;
  double inverse_residual = 0.0;
  bool signature_ok = true;
};

/// Symmetry, signature and inverse consistency at every point.
MetricValidation validate_metric(const MetricField& g, const std::vector<Point>& points);

/// Inner product g(u, v) of two vector values.
double inner(const Components<double>& g, const Components<double>& u, const Components<double>& v);

/// Lowers a vector value with g.
Components<double> lower(const Components<double>& g, const Components<double>& u);

inline constexpr double kTimelikeEpsilon = 1e-12;

/// n = u / √(-g(u,u)). Evaluation throws not-timelike where g(u,u) >= -ε.
/// When `points` is non-empty the condition is verified there eagerly.
VectorField normalize_timelike(const MetricField& g, const VectorField& u,
                               const std::vector<Point>& points = {});

/// Checks that a metric stays Lorentzian on a dense grid that
/// includes the faces of the box. Throws a signature error otherwise.
void require_lorentzian_on_box(const MetricField& g, const Chart& chart, int per_axis = 7);

}  // namespace weylfluid
