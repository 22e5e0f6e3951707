#pragma once

// Point-indexed tensor fields. Every field can be evaluated on plain doubles
// and on jets; closed-form fields propagate jets exactly, while derived and
// numeric fields assemble jets from central differences of their values.

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "weylfluid/chart.hpp"
#include "weylfluid/errors.hpp"
#include "weylfluid/jet.hpp"

namespace weylfluid {

inline constexpr int kMaxComponents = kMaxDim * kMaxDim * kMaxDim;

/// Flat row-major component storage for tensors up to rank 3.
template <class S>
struct Components {
  int dim = 0;
  int rank = 0;
  std::array<S, kMaxComponents> c{};

  Components() = default;
  Components(int dim_, int rank_) : dim(dim_), rank(rank_) {}

  int size() const {
    int n = 1;
    for (int i = 0; i < rank; ++i) n *= dim;
    return n;
  }

  S& operator()() { return c[0]; }
  const S& operator()() const { return c[0]; }
  S& operator()(int a) { return c[static_cast<std::size_t>(a)]; }
  const S& operator()(int a) const { return c[static_cast<std::size_t>(a)]; }
  S& operator()(int a, int b) { return c[static_cast<std::size_t>(a * dim + b)]; }
  const S& operator()(int a, int b) const { return c[static_cast<std::size_t>(a * dim + b)]; }
  S& operator()(int a, int b, int e) {
    return c[static_cast<std::size_t>((a * dim + b) * dim + e)];
  }
  const S& operator()(int a, int b, int e) const {
    return c[static_cast<std::size_t>((a * dim + b) * dim + e)];
  }
};

/// Plain values of a jet.
Components<double> values(const Components<Jet>& j);
/// ∂_mu of component `k` of a jet.
inline double partial(const Components<Jet>& j, int k, int mu) {
  return j.c[static_cast<std::size_t>(k)].d[static_cast<std::size_t>(mu)];
}

/// Central-difference rule used to build jets of fields whose values are only
/// available numerically.
struct FdRule {
  double step = 1e-4;
  int richardson = 0;  // 0: O(h^2), 1: one Richardson level, O(h^4)
  std::vector<Interval> box;  // stencil points must stay inside
};

enum class FieldOrigin { closed_form, derived, numeric };

/// Type-erased tensor field. `variance` lists index positions, e.g. "u", "dd",
/// "udd"; its length is the rank.
class Field {
 public:
  using EvalF64 = std::function<void(const Coords<double>&, Components<double>&)>;
  using EvalJet = std::function<void(const Coords<Jet>&, Components<Jet>&)>;

  Field() = default;

  /// Field given by a generic component function `fn(x, out)` that is valid for
  /// both double and Jet scalars.
  template <class Fn>
  static Field closed_form(int dim, std::string variance, Fn fn) {
    return Field(dim, std::move(variance), FieldOrigin::closed_form, EvalF64(fn), EvalJet(fn));
  }

  /// Field computed from derivatives of other fields (or from a numerical
  /// procedure). Its jets come from central differences with `rule`.
  static Field from_values(int dim, std::string variance, EvalF64 f, FdRule rule,
                           FieldOrigin origin = FieldOrigin::derived);

  /// Pointwise algebraic combination of input fields. `fn(out, in...)` must be
  /// generic in the scalar type; the result propagates jets through its inputs.
  template <class Fn, class... In>
  static Field compose(int dim, std::string variance, Fn fn, const In&... in) {
    FieldOrigin origin = FieldOrigin::closed_form;
    ((origin = in.field().origin() == FieldOrigin::closed_form ? origin : FieldOrigin::derived), ...);
    EvalF64 f64 = [fn, in...](const Coords<double>& x, Components<double>& out) {
      fn(out, in.field().eval(x)...);
    };
    EvalJet jet = [fn, in...](const Coords<Jet>& x, Components<Jet>& out) {
      fn(out, in.field().eval(x)...);
    };
    return Field(dim, std::move(variance), origin, std::move(f64), std::move(jet));
  }

  Components<double> eval(const Coords<double>& x) const;
  Components<Jet> eval(const Coords<Jet>& x) const;
  Components<double> operator()(const Point& p) const { return eval(p.x); }

  int dim() const { return impl_ ? impl_->dim : 0; }
  int rank() const { return impl_ ? static_cast<int>(impl_->variance.size()) : 0; }
  const std::string& variance() const;
  FieldOrigin origin() const { return impl_ ? impl_->origin : FieldOrigin::closed_form; }
  bool valid() const { return impl_ != nullptr; }
  const Field& field() const { return *this; }

 private:
  struct Impl {
    int dim;
    std::string variance;
    FieldOrigin origin;
    EvalF64 f64;
    EvalJet jet;
  };

  Field(int dim, std::string variance, FieldOrigin origin, EvalF64 f64, EvalJet jet);

  std::shared_ptr<const Impl> impl_;
};

/// Jet of `f` at `x` from central differences of its values.
Components<Jet> fd_jet(const Field::EvalF64& f, int dim, int rank, const Coords<double>& x,
                       const FdRule& rule);

/// Field with a fixed variance; the variance is checked at construction.
template <const char* Variance>
class TypedField {
 public:
  TypedField() = default;
  explicit TypedField(Field f) : f_(std::move(f)) {
    if (f_.variance() != Variance)
      throw Error(ErrorKind::construction, std::string("field variance '") + f_.variance() +
                                               "' does not match expected '" + Variance + "'");
  }
  const Field& field() const { return f_; }
  int dim() const { return f_.dim(); }
  Components<double> operator()(const Point& p) const { return f_.eval(p.x); }
  template <class S>
  Components<S> eval(const Coords<S>& x) const {
    return f_.eval(x);
  }

 private:
  Field f_;
};

namespace variance {
inline constexpr char scalar[] = "";
inline constexpr char vector[] = "u";
inline constexpr char covector[] = "d";
inline constexpr char tensor2[] = "dd";
inline constexpr char tensor2_up[] = "uu";
inline constexpr char mixed[] = "du";  // ∇_mu F^nu
inline constexpr char tensor3[] = "ddd";
inline constexpr char connection[] = "udd";
}  // namespace variance

using ScalarField = TypedField<variance::scalar>;
using VectorField = TypedField<variance::vector>;
using CovectorField = TypedField<variance::covector>;
using Tensor2Field = TypedField<variance::tensor2>;
using Tensor2UpField = TypedField<variance::tensor2_up>;
using Tensor3Field = TypedField<variance::tensor3>;

/// Vector density of weight 1 (e.g. the particle current).
class VectorDensityField {
 public:
  VectorDensityField() = default;
  explicit VectorDensityField(VectorField v) : v_(std::move(v)) {}
  const Field& field() const { return v_.field(); }
  int dim() const { return v_.dim(); }
  int weight() const { return 1; }
  Components<double> operator()(const Point& p) const { return v_(p); }

 private:
  VectorField v_;
};

/// Convenience constructors.
ScalarField constant_scalar(int dim, double value);
VectorField coordinate_vector(int dim, int axis, double scale = 1.0);
CovectorField zero_covector(int dim);

}  // namespace weylfluid
