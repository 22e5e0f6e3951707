#pragma once

// Forward-mode first-order jets: a value together with its partial
// derivatives along every chart coordinate.

#include <array>
#include <cmath>

namespace weylfluid {

/// Largest supported chart dimension.
inline constexpr int kMaxDim = 4;

struct Jet {
  double v = 0.0;
  std::array<double, kMaxDim> d{};

  constexpr Jet() = default;
  constexpr Jet(double value) : v(value) {}  // NOLINT: implicit constant lift

  /// The coordinate function x^i evaluated at `value`.
  static Jet variable(double value, int i) {
    Jet j(value);
    j.d[static_cast<std::size_t>(i)] = 1.0;
    return j;
  }

  Jet& operator+=(const Jet& o) {
    v += o.v;
    for (int i = 0; i < kMaxDim; ++i) d[i] += o.d[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v -= o.v;
    for (int i = 0; i < kMaxDim; ++i) d[i] -= o.d[i];
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    for (int i = 0; i < kMaxDim; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    const double inv = 1.0 / o.v;
    const double q = v * inv;
    for (int i = 0; i < kMaxDim; ++i) d[i] = (d[i] - q * o.d[i]) * inv;
    v = q;
    return *this;
  }
};

inline Jet operator-(Jet a) {
  a.v = -a.v;
  for (auto& x : a.d) x = -x;
  return a;
}
inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }
inline Jet operator+(Jet a, double b) { a.v += b; return a; }
inline Jet operator+(double b, Jet a) { a.v += b; return a; }
inline Jet operator-(Jet a, double b) { a.v -= b; return a; }
inline Jet operator-(double b, const Jet& a) { return Jet(b) - a; }
inline Jet operator*(Jet a, double b) {
  a.v *= b;
  for (auto& x : a.d) x *= b;
  return a;
}
inline Jet operator*(double b, Jet a) { return a * b; }
inline Jet operator/(Jet a, double b) { return a * (1.0 / b); }
inline Jet operator/(double b, const Jet& a) { return Jet(b) / a; }

namespace detail {
// f(a) with f'(a) = slope
inline Jet chain(const Jet& a, double value, double slope) {
  Jet r(value);
  for (int i = 0; i < kMaxDim; ++i) r.d[i] = slope * a.d[i];
  return r;
}
}  // namespace detail

/// Elementary functions overloaded for both double and Jet so that closed-form
/// component functions can be written once as generic lambdas.
namespace math {

inline double value(double x) { return x; }
inline double value(const Jet& x) { return x.v; }

inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double pow(double x, double e) { return std::pow(x, e); }
inline double abs(double x) { return std::abs(x); }

inline Jet exp(const Jet& a) {
  const double e = std::exp(a.v);
  return detail::chain(a, e, e);
}
inline Jet log(const Jet& a) { return detail::chain(a, std::log(a.v), 1.0 / a.v); }
inline Jet sqrt(const Jet& a) {
  const double s = std::sqrt(a.v);
  return detail::chain(a, s, 0.5 / s);
}
inline Jet sin(const Jet& a) { return detail::chain(a, std::sin(a.v), std::cos(a.v)); }
inline Jet cos(const Jet& a) { return detail::chain(a, std::cos(a.v), -std::sin(a.v)); }
inline Jet pow(const Jet& a, double e) {
  const double p = std::pow(a.v, e);
  return detail::chain(a, p, e * std::pow(a.v, e - 1.0));
}
inline Jet abs(const Jet& a) { return a.v < 0.0 ? -a : a; }

}  // namespace math
}  // namespace weylfluid
