#include "weylfluid/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "parallel.hpp"
#include "weylfluid/conformal.hpp"
#include "weylfluid/conservation.hpp"
#include "weylfluid/worldlines.hpp"

namespace weylfluid {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Largest absolute component over all points; NaN if any value is not finite.
template <class F>
double max_abs(const F& field, const std::vector<Point>& points) {
  std::vector<double> per(points.size(), 0.0);
  detail::parallel_for(points.size(), [&](std::size_t i) {
    const Components<double> c = field(points[i]);
    double m = 0.0;
    for (int k = 0; k < c.size(); ++k) {
      const double a = std::abs(c.c[static_cast<std::size_t>(k)]);
      m = std::isfinite(a) ? std::max(m, a) : kNaN;
      if (std::isnan(m)) break;
    }
    per[i] = m;
  });
  double out = 0.0;
  for (double v : per) {
    if (!std::isfinite(v)) return kNaN;
    out = std::max(out, v);
  }
  return out;
}

double max_of(std::initializer_list<double> values) {
  double out = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) return kNaN;
    out = std::max(out, v);
  }
  return out;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Echo spacetime_echo(const SuiteConfig& c) {
  return {{"preset", c.preset},
          {"kind", c.spacetime.kind},
          {"dim", static_cast<long long>(c.spacetime.dim)},
          {"hubble", c.spacetime.hubble},
          {"power", c.spacetime.power},
          {"schwarzschild_radius", c.spacetime.schwarzschild_radius},
          {"perturbation", c.spacetime.perturbation}};
}

Echo fluid_echo(const SuiteConfig& c) {
  return {{"velocity", c.fluid.velocity}, {"shear", c.fluid.shear},   {"shear_profile", c.fluid.shear_profile},
          {"eos_w", c.fluid.eos_w},       {"density", c.fluid.density}, {"rho0", c.fluid.rho0},
          {"phi", c.fluid.phi},           {"phi0", c.fluid.phi0}};
}

Echo settings_echo(const SuiteConfig& c) {
  Echo e{{"seed", static_cast<long long>(c.seed)},
         {"derivative_mode", c.derivative.mode == DerivativeMode::forward_dual ? "forward-dual" : "central-difference"},
         {"derivative_step", c.derivative.step},
         {"richardson", static_cast<long long>(c.derivative.richardson)},
         {"tol_ad", c.tolerances.ad},
         {"tol_fd", c.tolerances.fd},
         {"tol_identity", c.tolerances.identity},
         {"tol_frame", c.tolerances.frame},
         {"tol_frame_closed_form", c.tolerances.frame_closed_form},
         {"tol_quadrature", c.tolerances.quadrature},
         {"tol_trajectory", c.tolerances.trajectory},
         {"tol_null_check", c.tolerances.null_check},
         {"grid_per_axis", static_cast<long long>(c.sampling.grid_per_axis)},
         {"random_points", static_cast<long long>(c.sampling.random_points)},
         {"factor_amplitude", c.factor_amplitude},
         {"frame_nodes", static_cast<long long>(c.frame_nodes)},
         {"rays", static_cast<long long>(c.rays)},
         {"ray_arc", c.ray_arc},
         {"quadrature_nodes", static_cast<long long>(c.quadrature_nodes)}};
  if (c.weight_override) e.emplace_back("weight_override", static_cast<long long>(*c.weight_override));
  if (c.frame_coordinate) e.emplace_back("frame_coordinate", static_cast<long long>(*c.frame_coordinate));
  if (c.frame_value) e.emplace_back("frame_value", *c.frame_value);
  return e;
}

/// Shared state of one run.
struct Context {
  const SuiteConfig& config;
  Preset preset;
  DerivativeEngine engine;
  std::vector<Point> points;
  WeylBundle bundle;
  double tol;  // derivative-level tolerance of the active engine mode

  const Chart& chart() const { return preset.spacetime.chart; }
  const MetricField& g() const { return preset.spacetime.g; }
  const FluidState& fluid() const { return preset.fluid; }
  int dim() const { return chart().dim(); }
  /// Identity checks compare differences of several derivative terms; in FD
  /// mode the FD tolerance governs them too.
  double identity_tol() const {
    return engine.mode() == DerivativeMode::forward_dual ? config.tolerances.identity : config.tolerances.fd;
  }
};

void connection_suite(const Context& cx, Report& r) {
  const ConnectionField lc = levi_civita(cx.engine, cx.g());
  const CovectorField zero = zero_covector(cx.dim());
  r.add("levi-civita-metricity", "∇^{g}_μ g_{αβ} = 0",
        max_abs(nonmetricity_residual(cx.engine, lc, cx.g(), zero), cx.points), cx.tol);
  r.add("eps-torsion-free", "Γ^α_{βγ} = Γ^α_{γβ}",
        max_abs([&](const Point& p) { return torsion(cx.bundle.gamma)(p); }, cx.points), cx.tol);
  r.add("eps-nonmetricity", "∇^Γ_μ g_{αβ} = 2 A_μ g_{αβ}",
        max_abs(nonmetricity_residual(cx.engine, cx.bundle.gamma, cx.g(), cx.bundle.A), cx.points), cx.tol);
  r.add("eps-density-trace", "∇^Γ_μ √|g| = m A_μ √|g|",
        max_abs(density_trace_residual(cx.engine, cx.bundle.gamma, cx.g(), cx.bundle.A), cx.points), cx.tol);
}

void fluid_suite(const Context& cx, Report& r) {
  const FluidValidation v = validate_fluid(cx.g(), cx.fluid(), cx.points);
  r.add("velocity-normalization", "g_{μν} n^μ n^ν = -1", v.normalization_residual, cx.config.tolerances.ad);
  r.add("geodesic-defect", "n^μ ∇^Γ_μ n^α = φ n^α",
        max_abs(geodesic_defect(cx.engine, cx.bundle, cx.fluid().n, cx.fluid().phi), cx.points), cx.tol);
  const VectorField& n = cx.fluid().n;
  const ScalarField& phi = cx.fluid().phi;
  const CovectorField& A = cx.bundle.A;
  const int m = cx.dim();
  r.add("covector-projection", "n^μ A_μ = -φ",
        max_abs(
            [&](const Point& p) {
              const Components<double> nv = n(p), a = A(p);
              Components<double> out(m, 0);
              double s = 0.0;
              for (int i = 0; i < m; ++i) s += nv(i) * a(i);
              out() = s + phi(p)();
              return out;
            },
            cx.points),
        cx.tol);
}

void conservation_suite(const Context& cx, Report& r) {
  const FluidState& f = cx.fluid();
  const DecompositionResiduals d = decomposition_residuals(cx.engine, cx.bundle, f);
  const double itol = cx.identity_tol();
  r.add("decomposition-along", "n_μ ∇^Γ_ν T^{μν} = s_a C1", max_abs(d.along, cx.points), itol);
  r.add("decomposition-transverse", "(δ^μ_α + n^μ n_α) ∇^Γ_ν T^{αν} = s_b C2^μ", max_abs(d.transverse, cx.points),
        itol);
  const Tensor2Field T = stress_energy(cx.g(), f.n, f.p, f.rho);
  const VectorDensityField J = particle_current(cx.g(), T, f.n);
  r.add("current-closed-form", "J^μ = -√|g| ρ n^μ", max_abs(current_closed_form_residual(cx.g(), J, f), cx.points),
        cx.tol);
  r.add("current-identity",
        "∂_μ J^μ = √|g| (∇^Γ_μ T^{μν} n_ν + T^{μν} ∇^Γ_μ n_ν) + m √|g| A_μ T^{μν} n_ν",
        max_abs(current_identity_residual(cx.engine, cx.bundle, T, f.n), cx.points), itol);
  const ConditionScalars s = condition_scalars(cx.engine, cx.bundle, f);
  r.add("condition-scalar-s1", "T^{μν} ∇^Γ_μ n_ν = p ∇^{g}_μ n^μ + (ρ + (m-1) p) φ",
        max_abs(s.s1_residual, cx.points), cx.tol);
  r.add("condition-scalar-s2", "T^{μν} A_μ n_ν = ρ φ", max_abs(s.s2_residual, cx.points), cx.tol);

  if (cx.config.fluid.density == "conserved") {
    r.add("current-divergence", "∂_μ J^μ = 0", max_abs(current_divergence(cx.engine, J), cx.points), itol);
    const std::vector<double>& slices = cx.config.slices;
    std::vector<double> counts;
    for (double t : slices) {
      if (!cx.chart().interval(0).contains(t))
        throw Error(ErrorKind::config, "quadrature slice t = " + std::to_string(t) + " lies outside the chart");
      counts.push_back(number_on_slice(cx.chart(), J, full_slice(cx.chart(), 0, t, cx.config.quadrature_nodes)).refined);
    }
    double worst = 0.0;
    for (double c : counts) worst = std::max(worst, std::abs(c - counts.front()) / std::abs(counts.front()));
    r.add("particle-number-slices", "N(Σ_a) = N(Σ_b)", std::isfinite(worst) ? worst : kNaN,
          cx.config.tolerances.quadrature);
  }
}

void conformal_suite(const Context& cx, Report& r) {
  const int m = cx.dim();
  const SuiteConfig& c = cx.config;
  const ConformalWeights weights = c.weight_override ? ConformalWeights::override_weight(m, *c.weight_override)
                                                     : ConformalWeights::standard(m);
  const ConformalFactor phi1 = ConformalFactor::from_log(seeded_polynomial(cx.chart(), c.seed + 101, c.factor_amplitude));
  const ConformalFactor phi2 = ConformalFactor::from_log(seeded_polynomial(cx.chart(), c.seed + 202, c.factor_amplitude));
  const FluidBundle base{cx.g(), cx.fluid(), cx.bundle.A};
  const FluidBundle once = conformal_rescale(cx.engine, base, phi1, weights);
  const ConnectionField gamma1 = eps_connection(cx.engine, once.g, once.A);

  auto difference = [](const Field& a, const Field& b) {
    return [a, b](const Point& p) {
      Components<double> x = a(p);
      const Components<double> y = b(p);
      for (int k = 0; k < x.size(); ++k) x.c[static_cast<std::size_t>(k)] -= y.c[static_cast<std::size_t>(k)];
      return x;
    };
  };
  r.add("orbit-invariance", "Γ[Φ² g, A + d lnΦ] = Γ[g, A]",
        max_abs(difference(gamma1.field(), cx.bundle.gamma.field()), cx.points), cx.tol);

  const FluidBundle twice = conformal_rescale(cx.engine, once, phi2, weights);
  const FluidBundle product =
      conformal_rescale(cx.engine, base, ConformalFactor::product(phi1, phi2), weights);
  r.add("group-law", "(g, A) ↦ (Φ₂² Φ₁² g, A + d lnΦ₁ + d lnΦ₂) = (Φ₁Φ₂)·(g, A)",
        max_of({max_abs(difference(twice.g.field(), product.g.field()), cx.points),
                max_abs(difference(twice.A.field(), product.A.field()), cx.points),
                max_abs(difference(twice.fluid.n.field(), product.fluid.n.field()), cx.points),
                max_abs(difference(twice.fluid.phi.field(), product.fluid.phi.field()), cx.points)}),
        cx.tol);

  const CovectorField closure = fluid_covector(cx.engine, once.g, once.fluid.n, once.fluid.phi);
  r.add("covector-closure", "Ã_ν = ñ^μ ∇^{g̃}_μ ñ_ν + φ̃ ñ_ν",
        max_abs(difference(closure.field(), once.A.field()), cx.points), cx.identity_tol());

  const Tensor2Field T = stress_energy(cx.g(), cx.fluid().n, cx.fluid().p, cx.fluid().rho);
  const Tensor2Field T1 = stress_energy(once.g, once.fluid.n, once.fluid.p, once.fluid.rho);
  const VectorDensityField J = particle_current(cx.g(), T, cx.fluid().n);
  const VectorDensityField J1 = particle_current(once.g, T1, once.fluid.n);
  r.add("current-invariance", "J̃^μ = J^μ", max_abs(current_invariance_residual(J, J1), cx.points),
        cx.identity_tol());
  r.add("stress-energy-weight", "T̃_{μν} = Φ^{3-m} T_{μν}",
        max_abs(rescaled_stress_energy_residual(T, T1, phi1, m), cx.points), cx.tol);
  const WeylBundle wb1{once.g, once.A, gamma1};
  r.add("rescaled-geodesic-defect", "ñ^μ ∇^Γ_μ ñ^α = φ̃ ñ^α",
        max_abs(geodesic_defect(cx.engine, wb1, once.fluid.n, once.fluid.phi), cx.points), cx.identity_tol());
}

void frame_suite(const Context& cx, Report& r) {
  const SuiteConfig& c = cx.config;
  const int k = c.frame_coordinate.value_or(cx.preset.spacetime.frame_coordinate);
  const double value = c.frame_value.value_or(cx.preset.spacetime.frame_value);
  FrameSolverParams params;
  params.nodes_per_axis = c.frame_nodes;
  params.fd_step = c.frame_fd_step;
  const PreferredFrame frame = preferred_frame(cx.engine, cx.g(), cx.fluid().n, k, value, params);
  const double ftol = c.tolerances.frame;

  if (k == 0 && c.spacetime.perturbation == 0.0 && c.fluid.velocity == "comoving" &&
      (c.spacetime.kind == "flrw-exp" || c.spacetime.kind == "flrw-power")) {
    const ScalarField exact = flrw_frame_log(cx.preset.spacetime, value);
    double worst = 0.0;
    for (std::size_t i = 0; i < frame.grid.values().size(); ++i) {
      Point p;
      p.dim = cx.dim();
      p.x = frame.grid.node(i);
      worst = std::max(worst, std::abs(frame.grid.values()[i] - exact(p)()));
    }
    r.add("frame-closed-form", "lnΦ = -ln(a(t) / a(t_0))", worst, c.tolerances.frame_closed_form);
  }

  r.add("frame-transport", "n^μ ∂_μ lnΦ = -∇^{g}_μ n^μ / (m-1)",
        max_abs(transport_residual(cx.engine, cx.g(), cx.fluid().n, frame.factor), cx.points), ftol);

  // Preferred representative with φ̃ = 0.
  const FluidBundle base{cx.g(), cx.fluid(), cx.bundle.A};
  FluidBundle pref = conformal_rescale(cx.engine, base, frame.factor, ConformalWeights::standard(cx.dim()));
  r.add("frame-incompressibility", "∇^{g̃}_μ ñ^μ = 0",
        max_abs(incompressibility_residual(cx.engine, pref.g, pref.fluid.n), cx.points), ftol);
  pref.fluid.phi = constant_scalar(cx.dim(), 0.0);
  pref.A = preferred_weyl_covector(cx.engine, pref.g, pref.fluid.n);
  const WeylBundle wb = make_bundle(cx.engine, pref.g, pref.A);
  const ConditionScalars s = condition_scalars(cx.engine, wb, pref.fluid);
  r.add("frame-condition-scalars", "φ̃ = 0 ⇒ T̃^{μν} ∇^Γ_μ ñ_ν = T̃^{μν} A_μ ñ_ν = 0",
        max_of({max_abs(s.s1, cx.points), max_abs(s.s2, cx.points)}), ftol);
}

struct Ray {
  Point x0;
  Coords<double> spatial{};
};

std::vector<Ray> seeded_rays(const Chart& chart, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed ^ 0x5bd1e9955bd1e995ULL);
  const int m = chart.dim();
  std::vector<Ray> rays;
  for (int i = 0; i < count; ++i) {
    Ray ray;
    ray.x0.dim = m;
    for (int a = 0; a < m; ++a) ray.x0[a] = uniform(rng, chart.interior(a).lo, chart.interior(a).hi);
    double norm = 0.0;
    for (int a = 1; a < m; ++a) {
      ray.spatial[a] = uniform(rng, -1.0, 1.0);
      norm += ray.spatial[a] * ray.spatial[a];
    }
    norm = std::sqrt(norm);
    if (norm < 1e-3) {
      ray.spatial[1] = 1.0;
      norm = 1.0;
    }
    for (int a = 1; a < m; ++a) ray.spatial[a] /= norm;
    rays.push_back(ray);
  }
  return rays;
}

double euclid(const Coords<double>& v, int m) {
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += v[i] * v[i];
  return std::sqrt(s);
}

void worldlines_suite(const Context& cx, Report& r) {
  const SuiteConfig& c = cx.config;
  const int m = cx.dim();
  const std::vector<Ray> rays = seeded_rays(cx.chart(), c.seed, c.rays);
  std::vector<double> flow(rays.size()), null_dev(rays.size()), orth(rays.size()), drift(rays.size());
  const NullGeodesicSettings null_settings{1e-10, std::numeric_limits<double>::infinity()};
  detail::parallel_for(rays.size(), [&](std::size_t i) {
    const Ray& ray = rays[i];
    const Components<double> n0 = cx.fluid().n(ray.x0);
    Coords<double> nv{};
    for (int a = 0; a < m; ++a) nv[a] = n0(a);
    const double s_flow = c.ray_arc / euclid(nv, m);
    const WorldlinePath line = integrate_flow_line(cx.chart(), cx.fluid().n, ray.x0, s_flow);
    const WorldlinePath auto_flow = integrate_autoparallel(cx.chart(), cx.bundle.gamma, ray.x0, nv, s_flow);
    const TrajectoryComparison a = trajectory_compare(line, auto_flow);
    flow[i] = a.max_deviation / std::max(1.0, a.common_arc);

    const Coords<double> k = null_direction(cx.g(), ray.x0, ray.spatial);
    const double s_null = c.ray_arc / euclid(k, m);
    const WorldlinePath geo = integrate_null_geodesic(cx.engine, cx.g(), ray.x0, k, s_null, {}, null_settings);
    const WorldlinePath auto_null = integrate_autoparallel(cx.chart(), cx.bundle.gamma, ray.x0, k, s_null);
    const TrajectoryComparison b = trajectory_compare(geo, auto_null);
    null_dev[i] = b.max_deviation / std::max(1.0, b.common_arc);
    const NullCheckReport rep = eps_null_check(cx.g(), cx.bundle.gamma, geo);
    orth[i] = rep.max_orthogonal;
    drift[i] = rep.max_null_drift;
  });
  auto worst = [](const std::vector<double>& v) {
    double out = 0.0;
    for (double x : v) out = std::isfinite(x) ? std::max(out, x) : kNaN;
    return out;
  };
  r.add("flow-line-autoparallel", "integral curves of n are Γ-autoparallel trajectories", worst(flow),
        c.tolerances.trajectory);
  r.add("null-autoparallel", "null {g}-geodesics are Γ-autoparallel trajectories", worst(null_dev),
        c.tolerances.trajectory);
  r.add("eps-null-orthogonal", "k^μ ∇^Γ_μ k^α ∥ k^α", worst(orth), c.tolerances.null_check);
  r.add("null-first-integral", "g_{μν} k^μ k^ν = 0", worst(drift), c.tolerances.null_check);
}

}  // namespace

RunOutcome run_suite(const SuiteConfig& config) {
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();
  RunOutcome out;
  Report& r = out.report;
  r.suites = config.suites;
  r.spacetime = spacetime_echo(config);
  r.fluid = fluid_echo(config);
  r.settings = settings_echo(config);

  std::string current = "setup";
  try {
    Preset preset = build(config.spacetime, config.fluid, config.seed);
    DerivativeSettings ds = config.derivative;
    ds.tol_ad = config.tolerances.ad;
    ds.tol_fd = config.tolerances.fd;
    const DerivativeEngine engine(preset.spacetime.chart, ds);
    // Rebuild the fluid on the configured engine so derived fields use its settings.
    preset.fluid = build_fluid(engine, preset.spacetime, config.fluid, config.seed);
    std::vector<Point> points = sample_points(preset.spacetime.chart, config.sampling);
    WeylBundle bundle = fluid_connection(engine, preset.spacetime.g, preset.fluid.n, preset.fluid.phi);
    const Context cx{config, std::move(preset), engine, std::move(points), std::move(bundle), engine.tolerance()};
    for (const std::string& suite : config.suites) {
      current = suite;
      if (suite == "connection") connection_suite(cx, r);
      else if (suite == "fluid") fluid_suite(cx, r);
      else if (suite == "conservation") conservation_suite(cx, r);
      else if (suite == "conformal") conformal_suite(cx, r);
      else if (suite == "frame") frame_suite(cx, r);
      else if (suite == "worldlines") worldlines_suite(cx, r);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config) throw;
    r.add_error(current, std::string(to_string(e.kind())) + ": " + e.what());
    out.runtime_error = true;
  } catch (const std::exception& e) {
    r.add_error(current, e.what());
    out.runtime_error = true;
  }
  r.finalize();
  if (config.record_runtime)
    r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

int exit_status(const RunOutcome& outcome) {
  if (outcome.runtime_error) return 3;
  return outcome.report.pass ? 0 : 1;
}

void export_frame_csv(const SuiteConfig& config, const std::string& path) {
  const Preset preset = build(config.spacetime, config.fluid, config.seed);
  const DerivativeEngine engine(preset.spacetime.chart, config.derivative);
  FrameSolverParams params;
  params.nodes_per_axis = config.frame_nodes;
  params.fd_step = config.frame_fd_step;
  const int k = config.frame_coordinate.value_or(preset.spacetime.frame_coordinate);
  const double value = config.frame_value.value_or(preset.spacetime.frame_value);
  const PreferredFrameSolver solver(engine, preset.spacetime.g, preset.fluid.n, k, value, params);
  const GridScalar grid = solver.solve_grid();
  std::ostringstream os;
  const Chart& chart = preset.spacetime.chart;
  for (int i = 0; i < chart.dim(); ++i) os << chart.name(i) << ',';
  os << "ln_phi\n";
  char buf[32];
  for (std::size_t i = 0; i < grid.values().size(); ++i) {
    const Coords<double> x = grid.node(i);
    for (int a = 0; a < chart.dim(); ++a) {
      std::snprintf(buf, sizeof buf, "%.17g,", x[a]);
      os << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g\n", grid.values()[i]);
    os << buf;
  }
  write_text_file(path, os.str());
}

void export_geodesic_csv(const SuiteConfig& config, const std::string& kind, const std::vector<double>& x0,
                         const std::vector<double>& direction, double s_max, const std::string& path) {
  const Preset preset = build(config.spacetime, config.fluid, config.seed);
  const Chart& chart = preset.spacetime.chart;
  const int m = chart.dim();
  if (static_cast<int>(x0.size()) != m || (kind != "flow" && static_cast<int>(direction.size()) != m))
    throw Error(ErrorKind::config, "start point and direction need " + std::to_string(m) + " components");
  const DerivativeEngine engine(chart, config.derivative);
  Point p;
  p.dim = m;
  Coords<double> v{};
  for (int i = 0; i < m; ++i) {
    p[i] = x0[static_cast<std::size_t>(i)];
    if (kind != "flow") v[i] = direction[static_cast<std::size_t>(i)];
  }
  WorldlinePath path_out;
  if (kind == "null") {
    path_out = integrate_null_geodesic(engine, preset.spacetime.g, p, null_direction(preset.spacetime.g, p, v), s_max);
  } else if (kind == "autoparallel") {
    const WeylBundle b = fluid_connection(engine, preset.spacetime.g, preset.fluid.n, preset.fluid.phi);
    path_out = integrate_autoparallel(chart, b.gamma, p, v, s_max);
  } else if (kind == "flow") {
    path_out = integrate_flow_line(chart, preset.fluid.n, p, s_max);
  } else {
    throw Error(ErrorKind::config, "unknown path kind '" + kind + "'");
  }
  std::ostringstream os;
  path_out.write_csv(os, chart.names());
  write_text_file(path, os.str());
}

}  // namespace weylfluid
