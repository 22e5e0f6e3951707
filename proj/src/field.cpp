#include "weylfluid/field.hpp"

namespace weylfluid {

Components<double> values(const Components<Jet>& j) {
  Components<double> out(j.dim, j.rank);
  for (int k = 0; k < j.size(); ++k) out.c[k] = j.c[k].v;
  return out;
}

Field::Field(int dim, std::string variance, FieldOrigin origin, EvalF64 f64, EvalJet jet)
    : impl_(std::make_shared<Impl>(
          Impl{dim, std::move(variance), origin, std::move(f64), std::move(jet)})) {
  if (dim < 2 || dim > kMaxDim) throw Error(ErrorKind::construction, "field dimension out of range");
  if (impl_->variance.size() > 3) throw Error(ErrorKind::capability, "tensor rank above 3");
}

Field Field::from_values(int dim, std::string variance, EvalF64 f, FdRule rule,
                         FieldOrigin origin) {
  const int rank = static_cast<int>(variance.size());
  EvalJet jet = [f, dim, rank, rule](const Coords<Jet>& x, Components<Jet>& out) {
    Coords<double> base{};
    for (int i = 0; i < dim; ++i) base[i] = x[i].v;
    const Components<Jet> local = fd_jet(f, dim, rank, base, rule);
    // chain rule through the coordinate jets of x
    for (int k = 0; k < local.size(); ++k) {
      Jet r(local.c[k].v);
      for (int a = 0; a < kMaxDim; ++a) {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) s += local.c[k].d[i] * x[i].d[a];
        r.d[a] = s;
      }
      out.c[k] = r;
    }
  };
  return Field(dim, std::move(variance), origin, std::move(f), std::move(jet));
}

Components<double> Field::eval(const Coords<double>& x) const {
  Components<double> out(impl_->dim, rank());
  impl_->f64(x, out);
  return out;
}

Components<Jet> Field::eval(const Coords<Jet>& x) const {
  Components<Jet> out(impl_->dim, rank());
  impl_->jet(x, out);
  return out;
}

const std::string& Field::variance() const {
  static const std::string empty;
  return impl_ ? impl_->variance : empty;
}

namespace {

void check_stencil(const FdRule& rule, const Coords<double>& x, int axis, double h) {
  if (rule.box.empty()) return;
  const Interval& iv = rule.box[static_cast<std::size_t>(axis)];
  if (!iv.contains(x[axis] - h) || !iv.contains(x[axis] + h))
    throw Error(ErrorKind::domain_exit, "difference stencil leaves the chart along coordinate " +
                                            std::to_string(axis));
}

}  // namespace

Components<Jet> fd_jet(const Field::EvalF64& f, int dim, int rank, const Coords<double>& x,
                       const FdRule& rule) {
  Components<double> centre(dim, rank);
  f(x, centre);
  Components<Jet> out(dim, rank);
  const int n = centre.size();
  for (int k = 0; k < n; ++k) out.c[k] = Jet(centre.c[k]);

  auto difference = [&](int axis, double h, Components<double>& result) {
    Coords<double> xp = x, xm = x;
    xp[axis] += h;
    xm[axis] -= h;
    Components<double> fp(dim, rank), fm(dim, rank);
    f(xp, fp);
    f(xm, fm);
    for (int k = 0; k < n; ++k) result.c[k] = (fp.c[k] - fm.c[k]) / (2.0 * h);
  };

  for (int axis = 0; axis < dim; ++axis) {
    const double h = rule.step;
    check_stencil(rule, x, axis, h);
    Components<double> coarse(dim, rank);
    difference(axis, h, coarse);
    if (rule.richardson > 0) {
      Components<double> fine(dim, rank);
      difference(axis, 0.5 * h, fine);
      for (int k = 0; k < n; ++k) out.c[k].d[axis] = (4.0 * fine.c[k] - coarse.c[k]) / 3.0;
    } else {
      for (int k = 0; k < n; ++k) out.c[k].d[axis] = coarse.c[k];
    }
  }
  return out;
}

ScalarField constant_scalar(int dim, double value) {
  return ScalarField(Field::closed_form(dim, "", [value](const auto&, auto& out) { out() = value; }));
}

VectorField coordinate_vector(int dim, int axis, double scale) {
  return VectorField(Field::closed_form(dim, "u", [axis, scale](const auto&, auto& out) {
    out(axis) = scale;
  }));
}

CovectorField zero_covector(int dim) {
  return CovectorField(Field::closed_form(dim, "d", [](const auto&, auto&) {}));
}

}  // namespace weylfluid
