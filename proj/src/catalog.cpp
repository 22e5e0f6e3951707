#include "weylfluid/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "weylfluid/conservation.hpp"

namespace weylfluid {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Portable uniform double in [lo, hi) from a 64-bit engine.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

/// Degree-2 polynomial in box-normalized coordinates with |value| <= 1 on the box.
struct SeededPoly {
  int dim = 0;
  double c0 = 0.0;
  std::array<double, kMaxDim> c1{};
  std::array<std::array<double, kMaxDim>, kMaxDim> c2{};
  std::array<double, kMaxDim> center{};
  std::array<double, kMaxDim> half{};

  SeededPoly() = default;
  SeededPoly(const Chart& chart, std::mt19937_64& rng) : dim(chart.dim()) {
    const int terms = 1 + dim + dim * (dim + 1) / 2;
    const double scale = 1.0 / terms;
    c0 = uniform(rng, -1, 1) * scale;
    for (int i = 0; i < dim; ++i) c1[i] = uniform(rng, -1, 1) * scale;
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) c2[i][j] = uniform(rng, -1, 1) * scale;
    for (int i = 0; i < dim; ++i) {
      center[i] = 0.5 * (chart.interval(i).lo + chart.interval(i).hi);
      half[i] = 0.5 * chart.interval(i).length();
    }
  }

  template <class S>
  S operator()(const Coords<S>& x) const {
    std::array<S, kMaxDim> u{};
    for (int i = 0; i < dim; ++i) u[i] = (x[i] - center[i]) / half[i];
    S acc(c0);
    for (int i = 0; i < dim; ++i) {
      acc += c1[i] * u[i];
      for (int j = i; j < dim; ++j) acc += c2[i][j] * u[i] * u[j];
    }
    return acc;
  }
};

template <class S>
S normalized(const Chart& chart, const Coords<S>& x, int i) {
  const Interval& iv = chart.interval(i);
  return (x[i] - 0.5 * (iv.lo + iv.hi)) / (0.5 * iv.length());
}

std::vector<std::string> flat_names(int m) {
  static const char* names[] = {"t", "x", "y", "z"};
  return {names, names + m};
}

std::vector<Interval> flat_box(int m, Interval time) {
  std::vector<Interval> box{time};
  for (int i = 1; i < m; ++i) box.push_back({-1.0, 1.0});
  return box;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::config, message);
}

/// Scale factor as a generic function of t.
struct ScaleFactor {
  bool exponential = true;
  double hubble = 0.1;
  double power = 0.5;
  template <class S>
  S operator()(const S& t) const {
    return exponential ? S(math::exp(hubble * t)) : S(math::pow(t, power));
  }
};

bool is_flrw(const SpacetimeParams& p) { return p.kind == "flrw-exp" || p.kind == "flrw-power"; }

ScaleFactor scale_of(const SpacetimeParams& p) {
  return ScaleFactor{p.kind == "flrw-exp", p.hubble, p.power};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::vector<Point> validation_points(const Chart& chart) {
  return sample_points(chart, SamplingSettings{3, 16, 11});
}

Spacetime build_spacetime(const SpacetimeParams& params, std::uint64_t seed) {
  const int m = params.dim;
  require(params.perturbation >= 0.0 && params.perturbation <= 0.01,
          "perturbation amplitude must lie in [0, 0.01]");
  Spacetime st{params.kind, params, Chart({"t", "x"}, {{0, 1}, {0, 1}}), {}, {}, 0, 0.0};
  MetricField base;
  if (params.kind == "minkowski") {
    require(m >= 2 && m <= kMaxDim, "minkowski dimension must be 2, 3 or 4");
    st.chart = Chart(flat_names(m), flat_box(m, {-1.0, 2.0}));
    st.frame_value = -1.0;
    base = MetricField::upper_triangle(m, [m](const auto&, auto& g) {
      g(0, 0) = -1.0;
      for (int i = 1; i < m; ++i) g(i, i) = 1.0;
    });
  } else if (is_flrw(params)) {
    require(m >= 2 && m <= kMaxDim, "flrw dimension must be 2, 3 or 4");
    const ScaleFactor a = scale_of(params);
    if (a.exponential) {
      require(std::isfinite(params.hubble) && std::abs(params.hubble) <= 1.0, "hubble rate must lie in [-1, 1]");
      st.chart = Chart(flat_names(m), flat_box(m, {-1.0, 10.0}));
      st.frame_value = -1.0;
    } else {
      require(params.power > 0.0 && params.power <= 2.0, "flrw power must lie in (0, 2]");
      st.chart = Chart(flat_names(m), flat_box(m, {0.5, 10.0}));
      st.frame_value = 0.5;
    }
    st.scale_factor = [a](double t) { return a(t); };
    base = MetricField::upper_triangle(m, [m, a](const auto& x, auto& g) {
      const auto s = a(x[0]);
      g(0, 0) = -1.0;
      for (int i = 1; i < m; ++i) g(i, i) = s * s;
    });
  } else if (params.kind == "schwarzschild") {
    require(m == 4, "schwarzschild requires dimension 4");
    const double rs = params.schwarzschild_radius;
    require(rs > 0.0 && std::isfinite(rs), "schwarzschild radius must be positive");
    st.chart = Chart({"t", "r", "theta", "phi"},
                     {{0.0, 200.0}, {2.5 * rs, 10.0 * rs}, {kPi / 2 - 1.0, kPi / 2 + 1.0}, {-1.0, 2 * kPi + 1.0}});
    st.frame_value = 0.0;
    base = MetricField::upper_triangle(4, [rs](const auto& x, auto& g) {
      const auto f = 1.0 - rs / x[1];
      const auto sn = math::sin(x[2]);
      g(0, 0) = -f;
      g(1, 1) = 1.0 / f;
      g(2, 2) = x[1] * x[1];
      g(3, 3) = x[1] * x[1] * sn * sn;
    });
  } else {
    throw Error(ErrorKind::config, "unknown spacetime preset '" + params.kind + "'");
  }

  if (params.perturbation > 0.0) {
    std::mt19937_64 rng(seed);
    std::array<std::array<SeededPoly, kMaxDim>, kMaxDim> h{};
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) h[a][b] = SeededPoly(st.chart, rng);
    const double eps = params.perturbation;
    const MetricField unperturbed = base;
    base = MetricField::upper_triangle(m, [unperturbed, h, eps, m](const auto& x, auto& g) {
      g = unperturbed.field().eval(x);
      for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) g(a, b) += eps * h[a][b](x);
    });
    st.name += "+perturbed";
  }
  try {
    require_lorentzian_on_box(base, st.chart);
  } catch (const Error& e) {
    throw Error(ErrorKind::construction, std::string("spacetime preset is not Lorentzian: ") + e.what());
  }
  st.g = base;
  return st;
}

FluidState build_fluid(const DerivativeEngine& engine, const Spacetime& st, const FluidParams& params,
                       std::uint64_t seed) {
  const Chart& chart = st.chart;
  const int m = chart.dim();
  const std::vector<Point> points = validation_points(chart);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);

  VectorField u;
  if (params.velocity == "comoving") {
    u = coordinate_vector(m, 0);
  } else if (params.velocity == "sheared") {
    require(std::abs(params.shear) <= 0.5, "shear amplitude must lie in [-0.5, 0.5]");
    const double eps = params.shear;
    std::array<double, kMaxDim> c{};
    if (params.shear_profile == "seeded") {
      for (int i = 2; i < m; ++i) c[i] = uniform(rng, -0.2, 0.2);
    } else {
      require(params.shear_profile == "linear", "unknown shear profile '" + params.shear_profile + "'");
    }
    u = VectorField(Field::closed_form(m, "u", [chart, eps, c, m](const auto& x, auto& out) {
      auto s = normalized(chart, x, 1);
      auto mod = s * 0.0 + 1.0;
      for (int i = 2; i < m; ++i) mod += c[i] * normalized(chart, x, i);
      out(0) = 1.0;
      out(1) = eps * s * mod;
    }));
  } else {
    throw Error(ErrorKind::config, "unknown velocity preset '" + params.velocity + "'");
  }

  FluidState f;
  f.n = normalize_timelike(st.g, u, points);

  const double rho0 = params.rho0;
  require(std::isfinite(rho0), "rho0 must be finite");
  if (params.density == "constant") {
    f.rho = constant_scalar(m, rho0);
  } else if (params.density == "linear") {
    f.rho = ScalarField(Field::closed_form(m, "", [rho0](const auto& x, auto& out) {
      out() = rho0 * (1.0 + 0.1 * x[0]);
    }));
  } else if (params.density == "conserved") {
    require(is_flrw(st.params), "conserved density profile requires an flrw spacetime");
    const ScaleFactor a = scale_of(st.params);
    const double e = 1.0 - m;
    f.rho = ScalarField(Field::closed_form(m, "", [rho0, a, e](const auto& x, auto& out) {
      out() = rho0 * math::pow(a(x[0]), e);
    }));
  } else if (params.density == "polynomial") {
    const SeededPoly poly(chart, rng);
    f.rho = ScalarField(Field::closed_form(m, "", [rho0, poly](const auto& x, auto& out) {
      out() = rho0 * (1.0 + 0.2 * poly(x));
    }));
  } else {
    throw Error(ErrorKind::config, "unknown density profile '" + params.density + "'");
  }

  require(params.eos_w >= 0.0 && params.eos_w <= 1.0, "equation-of-state w must lie in [0, 1]");
  const double w = params.eos_w;
  f.p = ScalarField(Field::compose(m, "", [w](auto& out, const auto& r) { out() = w * r(); }, f.rho));

  const double phi0 = params.phi0;
  if (params.phi == "zero") {
    f.phi = constant_scalar(m, 0.0);
  } else if (params.phi == "constant") {
    f.phi = constant_scalar(m, phi0);
  } else if (params.phi == "polynomial") {
    const SeededPoly poly(chart, rng);
    f.phi = ScalarField(Field::closed_form(m, "", [phi0, poly](const auto& x, auto& out) {
      out() = phi0 + 0.1 * poly(x);
    }));
  } else if (params.phi == "frame") {
    // φ = n·∂lnΦ for the frame that makes n divergence-free, so φ̃ = 0 there.
    const ScalarField div = metric_divergence(engine, st.g, f.n);
    const double k = -1.0 / (m - 1);
    f.phi = ScalarField(Field::compose(m, "", [k](auto& out, const auto& d) { out() = k * d(); }, div));
  } else {
    throw Error(ErrorKind::config, "unknown reparametrization profile '" + params.phi + "'");
  }

  const FluidValidation v = validate_fluid(st.g, f, points);
  if (!(v.normalization_residual < 1e-10))
    throw Error(ErrorKind::construction, "fluid velocity is not unit timelike");
  return f;
}

NamedPreset named_preset(const std::string& name) {
  NamedPreset p;
  if (name == "minkowski-dust-rest") {
    p.spacetime.kind = "minkowski";
  } else if (name == "flrw-comoving-dust") {
    p.spacetime.kind = "flrw-exp";
    p.fluid.density = "conserved";
  } else if (name == "minkowski-sheared") {
    p.spacetime.kind = "minkowski";
    p.fluid.velocity = "sheared";
    p.fluid.shear_profile = "seeded";
  } else if (name == "schwarzschild-static") {
    p.spacetime.kind = "schwarzschild";
  } else if (name == "flrw-radiation-sheared") {
    p.spacetime.kind = "flrw-exp";
    p.fluid.velocity = "sheared";
    p.fluid.eos_w = 1.0 / 3.0;
    p.fluid.density = "polynomial";
    p.fluid.phi = "polynomial";
    p.fluid.phi0 = 0.2;
  } else {
    throw Error(ErrorKind::config, "unknown preset '" + name + "'");
  }
  return p;
}

std::vector<std::string> preset_names() {
  return {"minkowski-dust-rest", "flrw-comoving-dust", "minkowski-sheared", "schwarzschild-static",
          "flrw-radiation-sheared"};
}

Preset build(const SpacetimeParams& st_params, const FluidParams& fluid_params, std::uint64_t seed) {
  Spacetime st = build_spacetime(st_params, seed);
  const DerivativeEngine engine(st.chart);
  FluidState fluid = build_fluid(engine, st, fluid_params, seed);
  return {std::move(st), std::move(fluid)};
}

Preset build(const std::string& name, std::uint64_t seed) {
  const NamedPreset p = named_preset(name);
  return build(p.spacetime, p.fluid, seed);
}

std::vector<NamedPreset> preset_matrix() {
  std::vector<SpacetimeParams> spacetimes(6);
  spacetimes[0].kind = "minkowski";
  spacetimes[1].kind = "minkowski";
  spacetimes[1].dim = 3;
  spacetimes[1].perturbation = 0.01;
  spacetimes[2].kind = "flrw-exp";
  spacetimes[3].kind = "flrw-power";
  spacetimes[3].perturbation = 0.005;
  spacetimes[4].kind = "schwarzschild";
  spacetimes[5].kind = "flrw-exp";
  spacetimes[5].dim = 2;

  std::vector<FluidParams> fluids(4);
  fluids[1].eos_w = 1.0 / 3.0;
  fluids[1].density = "linear";
  fluids[1].phi = "constant";
  fluids[1].phi0 = 0.3;
  fluids[2].velocity = "sheared";
  fluids[2].density = "polynomial";
  fluids[2].phi = "polynomial";
  fluids[2].phi0 = 0.2;
  fluids[3].velocity = "sheared";
  fluids[3].shear_profile = "seeded";
  fluids[3].eos_w = 1.0 / 3.0;
  fluids[3].density = "polynomial";
  fluids[3].phi = "polynomial";
  fluids[3].phi0 = -0.1;

  std::vector<NamedPreset> out;
  for (const auto& s : spacetimes)
    for (const auto& f : fluids) out.push_back({s, f});
  return out;
}

std::string describe(const NamedPreset& p) {
  std::string s = p.spacetime.kind + "/" + std::to_string(p.spacetime.dim) + "d";
  if (p.spacetime.perturbation > 0.0) s += "+h" + fmt(p.spacetime.perturbation);
  s += " " + p.fluid.velocity;
  if (p.fluid.velocity == "sheared") s += "-" + p.fluid.shear_profile;
  s += " w=" + fmt(p.fluid.eos_w) + " rho=" + p.fluid.density + " phi=" + p.fluid.phi;
  if (p.fluid.phi != "zero") s += "(" + fmt(p.fluid.phi0) + ")";
  return s;
}

ScalarField seeded_polynomial(const Chart& chart, std::uint64_t seed, double amplitude) {
  std::mt19937_64 rng(seed);
  const SeededPoly poly(chart, rng);
  return ScalarField(Field::closed_form(chart.dim(), "", [poly, amplitude](const auto& x, auto& out) {
    out() = amplitude * poly(x);
  }));
}

CovectorField seeded_covector(const Chart& chart, std::uint64_t seed, double amplitude) {
  std::mt19937_64 rng(seed);
  std::array<SeededPoly, kMaxDim> polys{};
  for (int i = 0; i < chart.dim(); ++i) polys[i] = SeededPoly(chart, rng);
  const int m = chart.dim();
  return CovectorField(Field::closed_form(m, "d", [polys, amplitude, m](const auto& x, auto& out) {
    for (int i = 0; i < m; ++i) out(i) = amplitude * polys[i](x);
  }));
}

ScalarField flrw_frame_log(const Spacetime& st, double slice_value) {
  require(is_flrw(st.params) && st.params.perturbation == 0.0,
          "closed-form frame factor needs an unperturbed flrw spacetime");
  const ScaleFactor a = scale_of(st.params);
  const double log_ac = std::log(a(slice_value));
  return ScalarField(Field::closed_form(st.chart.dim(), "", [a, log_ac](const auto& x, auto& out) {
    out() = -(math::log(a(x[0])) - log_ac);
  }));
}

Coords<double> null_direction(const MetricField& g, const Point& x, const Coords<double>& spatial) {
  const int m = g.dim();
  const Components<double> G = g(x);
  double b = 0.0, c = 0.0;
  for (int i = 1; i < m; ++i) {
    b += G(0, i) * spatial[i];
    for (int j = 1; j < m; ++j) c += G(i, j) * spatial[i] * spatial[j];
  }
  const double disc = b * b - G(0, 0) * c;
  if (!(G(0, 0) < 0.0) || !(disc >= 0.0))
    throw Error(ErrorKind::not_timelike, "coordinate time direction is not timelike at the ray origin");
  Coords<double> k = spatial;
  k[0] = (b + std::sqrt(disc)) / -G(0, 0);
  return k;
}

Coords<double> circular_orbit_tangent(const SpacetimeParams& params, double r) {
  require(params.kind == "schwarzschild", "circular orbits are defined for schwarzschild only");
  const double rs = params.schwarzschild_radius;
  require(r > 1.5 * rs, "circular geodesics need r > 1.5 r_s");
  return {1.0, 0.0, 0.0, std::sqrt(rs / (2.0 * r * r * r))};
}

}  // namespace weylfluid
