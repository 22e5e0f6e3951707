#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "weylfluid/catalog.hpp"

namespace wf = weylfluid;

namespace {

wf::ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const wf::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return wf::ErrorKind::io;
}

double g_norm(const wf::MetricField& g, const wf::Point& x, const wf::Coords<double>& k, int m) {
  const auto gv = g(x);
  double s = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) s += gv(a, b) * k[a] * k[b];
  return s;
}

}  // namespace

TEST(Catalog, NamedPresetsBuildWithNormalizedFlow) {
  const auto names = wf::preset_names();
  EXPECT_EQ(names.size(), 5u);
  for (const auto& name : names) {
    const wf::Preset pr = wf::build(name, 1);
    const auto pts = wf::validation_points(pr.spacetime.chart);
    EXPECT_FALSE(pts.empty());
    const auto v = wf::validate_fluid(pr.spacetime.g, pr.fluid, pts);
    EXPECT_LT(v.normalization_residual, 1e-12) << name;
    EXPECT_TRUE(v.warnings.empty()) << name;
  }
}

TEST(Catalog, BuildsAreDeterministicPerSeed) {
  const wf::Preset a = wf::build("flrw-radiation-sheared", 42);
  const wf::Preset b = wf::build("flrw-radiation-sheared", 42);
  for (const auto& p : wf::validation_points(a.spacetime.chart)) {
    EXPECT_EQ(a.fluid.n(p).c, b.fluid.n(p).c);
    EXPECT_EQ(a.fluid.rho(p)(), b.fluid.rho(p)());
  }
  const auto p1 = wf::seeded_polynomial(a.spacetime.chart, 1, 0.1);
  const auto p1b = wf::seeded_polynomial(a.spacetime.chart, 1, 0.1);
  const auto p2 = wf::seeded_polynomial(a.spacetime.chart, 2, 0.1);
  const wf::Point x{1.0, 0.3, -0.2, 0.5};
  EXPECT_EQ(p1(x)(), p1b(x)());
  EXPECT_NE(p1(x)(), p2(x)());
}

TEST(Catalog, ConservedDensityOnExponentialFlrw) {
  wf::SpacetimeParams sp;
  sp.kind = "flrw-exp";
  wf::FluidParams fp;
  fp.density = "conserved";
  const wf::Preset pr = wf::build(sp, fp, 1);
  for (double t : {-1.0, 0.0, 2.5, 9.0}) EXPECT_NEAR(pr.fluid.rho(wf::Point{t, 0, 0, 0})(), std::exp(-0.3 * t), 1e-14);
  sp.kind = "minkowski";
  EXPECT_EQ(kind_of([&] { wf::build(sp, fp, 1); }), wf::ErrorKind::config);
}

TEST(Catalog, PerturbationBoundAndUnknownNames) {
  wf::SpacetimeParams sp;
  sp.perturbation = 0.02;
  EXPECT_EQ(kind_of([&] { wf::build_spacetime(sp, 1); }), wf::ErrorKind::config);
  sp.perturbation = 0.01;
  EXPECT_NO_THROW(wf::build_spacetime(sp, 1));
  EXPECT_EQ(kind_of([] { wf::named_preset("no-such-preset"); }), wf::ErrorKind::config);
  sp.perturbation = 0.0;
  sp.kind = "de-sitter";
  EXPECT_EQ(kind_of([&] { wf::build_spacetime(sp, 1); }), wf::ErrorKind::config);
}

TEST(Catalog, PresetMatrixCoversEveryKind) {
  const auto matrix = wf::preset_matrix();
  EXPECT_EQ(matrix.size(), 24u);
  std::set<std::string> kinds, labels;
  for (const auto& p : matrix) {
    kinds.insert(p.spacetime.kind);
    labels.insert(wf::describe(p));
  }
  EXPECT_EQ(kinds.size(), 4u);
  EXPECT_EQ(labels.size(), matrix.size());
}

TEST(Catalog, NullDirectionIsNull) {
  for (const auto& name : wf::preset_names()) {
    const wf::Preset pr = wf::build(name, 2);
    const int m = pr.spacetime.chart.dim();
    for (const auto& p : wf::sample_points(pr.spacetime.chart, {0, 4, 3})) {
      wf::Coords<double> dir{};
      for (int k = 1; k < m; ++k) dir[k] = 0.1 * k;
      const auto k0 = wf::null_direction(pr.spacetime.g, p, dir);
      EXPECT_GT(k0[0], 0.0);
      EXPECT_LT(std::abs(g_norm(pr.spacetime.g, p, k0, m)), 1e-13) << name;
    }
  }
}

TEST(Catalog, FlrwFrameLog) {
  wf::SpacetimeParams sp;
  sp.kind = "flrw-exp";
  const wf::Spacetime st = wf::build_spacetime(sp, 1);
  const auto l = wf::flrw_frame_log(st, 0.0);
  EXPECT_NEAR(l(wf::Point{3.0, 0, 0, 0})(), -0.3, 1e-15);
  EXPECT_EQ(st.frame_coordinate, 0);
  EXPECT_EQ(st.frame_value, -1.0);
}
