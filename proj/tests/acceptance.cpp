#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "weylfluid/catalog.hpp"
#include "weylfluid/conformal.hpp"
#include "weylfluid/config.hpp"
#include "weylfluid/connection.hpp"
#include "weylfluid/conservation.hpp"
#include "weylfluid/fluid.hpp"
#include "weylfluid/harness.hpp"
#include "weylfluid/report.hpp"

namespace wf = weylfluid;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double max_abs(const std::function<wf::Components<double>(const wf::Point&)>& f, const std::vector<wf::Point>& pts) {
  double worst = 0.0;
  for (const auto& p : pts) {
    const auto v = f(p);
    for (int k = 0; k < v.size(); ++k) {
      const double a = std::abs(v.c[static_cast<std::size_t>(k)]);
      if (!std::isfinite(a)) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, a);
    }
  }
  return worst;
}

template <class A, class B>
std::function<wf::Components<double>(const wf::Point&)> difference(const A& a, const B& b) {
  return [fa = a.field(), fb = b.field()](const wf::Point& p) {
    auto x = fa(p);
    const auto y = fb(p);
    for (int k = 0; k < x.size(); ++k) x.c[static_cast<std::size_t>(k)] -= y.c[static_cast<std::size_t>(k)];
    return x;
  };
}

template <class F>
std::function<wf::Components<double>(const wf::Point&)> eval(const F& f) {
  return [f](const wf::Point& p) { return f(p); };
}

std::vector<wf::Point> points(const wf::Chart& chart) { return wf::sample_points(chart, wf::SamplingSettings{}); }

struct Case {
  std::string label;
  wf::Preset preset;
};

/// Named presets followed by the spacetime × fluid matrix.
const std::vector<Case>& all_presets() {
  static const std::vector<Case> cases = [] {
    std::vector<Case> out;
    for (const auto& name : wf::preset_names()) out.push_back({name, wf::build(name, 7)});
    for (const auto& p : wf::preset_matrix()) out.push_back({wf::describe(p), wf::build(p.spacetime, p.fluid, 7)});
    return out;
  }();
  return cases;
}

struct Bundle {
  wf::DerivativeEngine engine;
  wf::WeylBundle weyl;
};

Bundle bundle_of(const wf::Preset& p) {
  wf::DerivativeEngine engine(p.spacetime.chart);
  return {engine, wf::fluid_connection(engine, p.spacetime.g, p.fluid.n, p.fluid.phi)};
}

struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, const std::string& label) {
    if (!(v <= value)) {
      value = v;
      where = label;
    }
  }
};

Outcome criterion1() {
  const double tol = 1e-9;
  Worst w;
  for (const auto& c : all_presets()) {
    const Bundle b = bundle_of(c.preset);
    w.update(max_abs(eval(wf::geodesic_defect(b.engine, b.weyl, c.preset.fluid.n, c.preset.fluid.phi)),
                     points(c.preset.spacetime.chart)),
             c.label);
  }
  return {w.value < tol, "max |n·∇^Γ n - φ n| = " + sci(w.value) + " (" + w.where + ") over " +
                             std::to_string(all_presets().size()) + " presets, tol " + sci(tol)};
}

Outcome criterion2() {
  const double tol = 1e-9;
  const auto matrix = wf::preset_matrix();
  std::vector<wf::SpacetimeParams> kinds;
  for (const auto& p : matrix)
    if (std::none_of(kinds.begin(), kinds.end(), [&](const wf::SpacetimeParams& k) {
          return k.kind == p.spacetime.kind && k.dim == p.spacetime.dim && k.perturbation == p.spacetime.perturbation;
        }))
      kinds.push_back(p.spacetime);
  Worst nm, tr;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const wf::SpacetimeParams& sp = kinds[(seed - 1) % kinds.size()];
    const wf::Spacetime st = wf::build_spacetime(sp, seed);
    const wf::DerivativeEngine engine(st.chart);
    const wf::CovectorField A = wf::seeded_covector(st.chart, seed, 0.5);
    const wf::ConnectionField G = wf::eps_connection(engine, st.g, A);
    const auto pts = points(st.chart);
    const std::string label = sp.kind + "/seed " + std::to_string(seed);
    nm.update(max_abs(eval(wf::nonmetricity_residual(engine, G, st.g, A)), pts), label);
    tr.update(max_abs(eval(wf::density_trace_residual(engine, G, st.g, A)), pts), label);
  }
  return {nm.value < tol && tr.value < tol, "20 seeded (g, A): max |∇^Γ g - 2A g| = " + sci(nm.value) +
                                                 ", max |∇^Γ √|g| - m A √|g|| = " + sci(tr.value) + ", tol " +
                                                 sci(tol)};
}

Outcome criterion3() {
  const double tol = 1e-9;
  const auto& cases = all_presets();
  Worst orbit, group;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Case& c = cases[(seed * 3) % cases.size()];
    const Bundle b = bundle_of(c.preset);
    const wf::Chart& chart = c.preset.spacetime.chart;
    const int m = chart.dim();
    const auto w = wf::ConformalWeights::standard(m);
    const auto f1 = wf::ConformalFactor::from_log(wf::seeded_polynomial(chart, seed, 0.1));
    const auto f2 = wf::ConformalFactor::from_log(wf::seeded_polynomial(chart, seed + 1000, 0.1));
    const wf::FluidBundle base{c.preset.spacetime.g, c.preset.fluid, b.weyl.A};
    const auto once = wf::conformal_rescale(b.engine, base, f1, w);
    const auto pts = points(chart);
    orbit.update(max_abs(difference(wf::eps_connection(b.engine, once.g, once.A), b.weyl.gamma), pts), c.label);
    const auto twice = wf::conformal_rescale(b.engine, once, f2, w);
    const auto product = wf::conformal_rescale(b.engine, base, wf::ConformalFactor::product(f1, f2), w);
    group.update(std::max({max_abs(difference(twice.g, product.g), pts), max_abs(difference(twice.A, product.A), pts),
                           max_abs(difference(wf::eps_connection(b.engine, twice.g, twice.A),
                                              wf::eps_connection(b.engine, product.g, product.A)),
                                   pts)}),
                 c.label);
  }
  return {orbit.value < tol && group.value < tol, "10 seeded Φ: orbit invariance " + sci(orbit.value) +
                                                       " (" + orbit.where + "), group law " + sci(group.value) +
                                                       ", tol " + sci(tol)};
}

Outcome criterion4() {
  const double jtol = 1e-8, ttol = 1e-9, orders = 1e6;
  Worst j, t;
  double control_min = std::numeric_limits<double>::infinity();
  std::string control_where;
  std::uint64_t seed = 1;
  for (const auto& c : all_presets()) {
    const Bundle b = bundle_of(c.preset);
    const wf::Chart& chart = c.preset.spacetime.chart;
    const int m = chart.dim();
    const auto f = wf::ConformalFactor::from_log(wf::seeded_polynomial(chart, seed++, 0.1));
    const wf::FluidBundle base{c.preset.spacetime.g, c.preset.fluid, b.weyl.A};
    const auto pts = points(chart);
    const auto current = [](const wf::FluidBundle& x) {
      return wf::particle_current(x.g, wf::stress_energy(x.g, x.fluid.n, x.fluid.p, x.fluid.rho), x.fluid.n);
    };
    const auto J = current(base);
    const auto T = wf::stress_energy(base.g, base.fluid.n, base.fluid.p, base.fluid.rho);
    const auto good = wf::conformal_rescale(b.engine, base, f, wf::ConformalWeights::standard(m));
    const auto bad = wf::conformal_rescale(b.engine, base, f, wf::ConformalWeights::override_weight(m, -m));
    j.update(max_abs(eval(wf::current_invariance_residual(J, current(good))), pts), c.label);
    t.update(max_abs(eval(wf::rescaled_stress_energy_residual(
                         T, wf::stress_energy(good.g, good.fluid.n, good.fluid.p, good.fluid.rho), f, m)),
                     pts),
             c.label);
    const double ctrl = max_abs(eval(wf::current_invariance_residual(J, current(bad))), pts);
    if (ctrl < control_min) {
      control_min = ctrl;
      control_where = c.label;
    }
  }
  const bool control_ok = control_min > jtol && control_min >= orders * std::max(j.value, jtol);
  return {j.value < jtol && t.value < ttol && control_ok,
          "w = 1-m: |J~ - J| = " + sci(j.value) + " (tol " + sci(jtol) + "), |T~ - Φ^{3-m} T| = " + sci(t.value) +
              " (tol " + sci(ttol) + "); control w = -m: min |J~ - J| = " + sci(control_min) + " (" + control_where +
              "), need >= " + sci(orders * std::max(j.value, jtol))};
}

Outcome criterion5() {
  const double tol = 1e-8;
  Worst w;
  for (const auto& c : all_presets()) {
    const Bundle b = bundle_of(c.preset);
    const auto& f = c.preset.fluid;
    const auto T = wf::stress_energy(c.preset.spacetime.g, f.n, f.p, f.rho);
    w.update(max_abs(eval(wf::current_identity_residual(b.engine, b.weyl, T, f.n)), points(c.preset.spacetime.chart)),
             c.label);
  }
  return {w.value < tol, "max |∂J - √g(∇^Γ T·n + T·∇^Γ n) - m √g A·T·n| = " + sci(w.value) + " (" + w.where +
                             "), tol " + sci(tol)};
}

Outcome criterion6() {
  const double tol = 1e-8;
  Worst along, trans;
  for (const auto& c : all_presets()) {
    const Bundle b = bundle_of(c.preset);
    const auto d = wf::decomposition_residuals(b.engine, b.weyl, c.preset.fluid);
    const auto pts = points(c.preset.spacetime.chart);
    along.update(max_abs(eval(d.along), pts), c.label);
    trans.update(max_abs(eval(d.transverse), pts), c.label);
  }
  return {along.value < tol && trans.value < tol, "along-flow " + sci(along.value) + ", transverse " +
                                                       sci(trans.value) + " (" + trans.where + "), tol " + sci(tol)};
}

Outcome criterion7() {
  const double tol = 1e-9;
  Worst published, corrected, s2, dust;
  for (const auto& c : all_presets()) {
    const Bundle b = bundle_of(c.preset);
    const auto& f = c.preset.fluid;
    const auto& g = c.preset.spacetime.g;
    const int m = c.preset.spacetime.chart.dim();
    const auto s = wf::condition_scalars(b.engine, b.weyl, f);
    const auto div = wf::metric_divergence(b.engine, g, f.n);
    const auto pts = points(c.preset.spacetime.chart);
    const auto closed = [&](const wf::Point& p) {
      wf::Components<double> out(m, 0);
      const double pr = f.p(p)(), rho = f.rho(p)(), phi = f.phi(p)();
      out() = s.s1(p)() - (pr * div(p)() + (2.0 * rho - m * pr) * phi);
      return out;
    };
    published.update(max_abs(closed, pts), c.label);
    corrected.update(max_abs(eval(s.s1_residual), pts), c.label);
    s2.update(max_abs(eval(s.s2_residual), pts), c.label);
    if (c.preset.fluid.p(pts.front())() == 0.0 && max_abs(eval(f.p), pts) == 0.0) {
      const auto reduction = [&](const wf::Point& p) {
        wf::Components<double> out(m, 0);
        out() = s.s1(p)() - f.rho(p)() * f.phi(p)();
        return out;
      };
      dust.update(max_abs(reduction, pts), c.label);
    }
  }
  const bool pass = published.value < tol && s2.value < tol && dust.value < tol;
  return {pass, "|s1 - (p ∇^g n + (2ρ - m p) φ)| = " + sci(published.value) + " (" + published.where +
                    "); |s2 - ρ φ| = " + sci(s2.value) + "; dust |s1 - ρ φ| = " + sci(dust.value) +
                    "; tol " + sci(tol) + " [|s1 - (p ∇^g n + (ρ + (m-1) p) φ)| = " + sci(corrected.value) + "]"};
}

const wf::CheckRecord* find_check(const wf::Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

double residual_of(const wf::Report& r, const std::string& name) {
  const wf::CheckRecord* c = find_check(r, name);
  return c && c->max_residual ? *c->max_residual : std::numeric_limits<double>::infinity();
}

Outcome criterion8() {
  wf::SuiteConfig flrw = wf::parse_config("[run]\npreset = flrw-comoving-dust\nsuites = frame\n[frame]\nslice_value = 0\n");
  const auto a = wf::run_suite(flrw);
  const double closed = residual_of(a.report, "frame-closed-form");
  wf::SuiteConfig sheared = wf::parse_config("[run]\npreset = minkowski-sheared\nsuites = frame\n");
  const auto b = wf::run_suite(sheared);
  const double transport = residual_of(b.report, "frame-transport");
  const double incompressible = residual_of(b.report, "frame-incompressibility");
  const double scalars = residual_of(b.report, "frame-condition-scalars");
  const bool pass = closed < 1e-6 && transport < 1e-4 && incompressible < 1e-4 && scalars < 1e-4;
  return {pass, "FLRW lnΦ vs -Ht on grid " + sci(closed) + " (tol 1e-06); sheared Minkowski transport " +
                    sci(transport) + ", ∇^{g~} n~ " + sci(incompressible) + ", |s1|,|s2| " + sci(scalars) +
                    " (tol 1e-04)"};
}

Outcome criterion9() {
  wf::SpacetimeParams sp;
  sp.kind = "flrw-exp";
  wf::FluidParams fp;
  fp.density = "conserved";
  const wf::Preset pr = wf::build(sp, fp, 7);
  const wf::DerivativeEngine engine(pr.spacetime.chart);
  const auto& f = pr.fluid;
  const auto J = wf::particle_current(pr.spacetime.g, wf::stress_energy(pr.spacetime.g, f.n, f.p, f.rho), f.n);
  const double div = max_abs(eval(wf::current_divergence(engine, J)), points(pr.spacetime.chart));
  const auto n0 = wf::number_on_slice(pr.spacetime.chart, J, wf::full_slice(pr.spacetime.chart, 0, 0.0, 33));
  const auto n5 = wf::number_on_slice(pr.spacetime.chart, J, wf::full_slice(pr.spacetime.chart, 0, 5.0, 33));
  const double rel = std::abs(n5.refined - n0.refined) / std::abs(n0.refined);
  return {div < 1e-8 && rel < 1e-6, "|∂J| = " + sci(div) + " (tol 1e-08); N(t=0) = " + sci(n0.refined) +
                                         ", N(t=5) = " + sci(n5.refined) + ", relative difference " + sci(rel) +
                                         " (tol 1e-06)"};
}

Outcome criterion10() {
  Worst dev, orth;
  bool errors = false;
  for (const auto& name : wf::preset_names()) {
    wf::SuiteConfig c = wf::parse_config("[run]\npreset = " + name + "\nsuites = worldlines\n[worldlines]\nrays = 5\n");
    const auto out = wf::run_suite(c);
    errors = errors || out.runtime_error;
    dev.update(residual_of(out.report, "null-autoparallel"), name);
    orth.update(residual_of(out.report, "eps-null-orthogonal"), name);
  }
  return {!errors && dev.value < 1e-6 && orth.value < 1e-8,
          "5 rays x " + std::to_string(wf::preset_names().size()) + " presets: deviation per unit arc " +
              sci(dev.value) + " (" + dev.where + ", tol 1e-06), orthogonal residual " + sci(orth.value) +
              " (tol 1e-08)"};
}

int run_cli(const std::string& args, const std::string& out) {
  const std::string cmd = std::string("\"") + WEYLFLUID_CLI + "\" " + args + " > \"" + out + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion11() {
  const std::string dir = WEYLFLUID_CONFIG_DIR;
  const auto tmp = std::filesystem::temp_directory_path() / ("weylfluid_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(tmp);
  const std::string r1 = (tmp / "run1.json").string(), r2 = (tmp / "run2.json").string();
  const std::string log = (tmp / "stdout.txt").string();
  const int e_pass = run_cli("verify --config \"" + dir + "/pass.ini\" --out \"" + r1 + "\"", log);
  run_cli("verify --config \"" + dir + "/pass.ini\" --out \"" + r2 + "\"", log);
  bool identical = false;
  try {
    identical = wf::read_text_file(r1) == wf::read_text_file(r2);
  } catch (const wf::Error&) {
  }
  const int e_fail = run_cli("verify --config \"" + dir + "/failing.ini\"", log);
  const int e_bad = run_cli("verify --config \"" + dir + "/malformed.ini\"", log);
  std::filesystem::remove_all(tmp);

  wf::SuiteConfig c = wf::parse_config("[run]\npreset = flrw-radiation-sheared\nsuites = connection, fluid, conservation\n");
  const bool in_process = wf::to_json(wf::run_suite(c).report) == wf::to_json(wf::run_suite(c).report);
  return {identical && in_process && e_pass == 0 && e_fail == 1 && e_bad == 2,
          std::string("byte-identical reports: ") + (identical && in_process ? "yes" : "no") + "; exit codes pass=" +
              std::to_string(e_pass) + " failing=" + std::to_string(e_fail) + " malformed=" + std::to_string(e_bad) +
              " (expected 0/1/2)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                          criterion5, criterion6, criterion7, criterion8,
                                                          criterion9, criterion10, criterion11};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
    return 2;
  }
  bool all = true;
  for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) {
    if (only != 0 && k != only) continue;
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(k - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("criterion %2d: %s  %s\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
