#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "weylfluid/catalog.hpp"
#include "weylfluid/connection.hpp"
#include "weylfluid/fluid.hpp"
#include "weylfluid/worldlines.hpp"

namespace wf = weylfluid;

namespace {

wf::Spacetime make(const std::string& kind, int dim = 4) {
  wf::SpacetimeParams p;
  p.kind = kind;
  p.dim = dim;
  return wf::build_spacetime(p, 7);
}

wf::CovectorField timelike_covector(int m, double c) {
  return wf::CovectorField(wf::Field::closed_form(m, "d", [c](const auto&, auto& out) { out(0) = -c; }));
}

}  // namespace

TEST(Autoparallel, StraightLineInMinkowski) {
  const wf::Spacetime st = make("minkowski");
  const wf::DerivativeEngine engine(st.chart);
  const wf::Point x0{0.0, -0.5, 0.0, 0.2};
  const wf::Coords<double> v0{1.0, 0.3, -0.2, 0.0};
  const auto path = wf::integrate_autoparallel(st.chart, wf::levi_civita(engine, st.g), x0, v0, 1.5);
  EXPECT_FALSE(path.exited());
  for (double s : {0.0, 0.37, 1.0, 1.5}) {
    const auto smp = path.at(s);
    for (int k = 0; k < 4; ++k) {
      EXPECT_NEAR(smp.x.x[k], x0.x[k] + v0[k] * s, 1e-12);
      EXPECT_NEAR(smp.v[k], v0[k], 1e-12);
    }
  }
}

TEST(Autoparallel, TimelikeWeylCovectorReparametrizesTheFlow) {
  const wf::Spacetime st = make("minkowski");
  const wf::DerivativeEngine engine(st.chart);
  const auto gamma = wf::eps_connection(engine, st.g, timelike_covector(4, 0.5));
  const auto path = wf::integrate_autoparallel(st.chart, gamma, wf::Point{0, 0, 0, 0}, {1, 0, 0, 0}, 2.0);
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto smp = path.sample(i);
    EXPECT_NEAR(smp.x.x[0], 2.0 * std::log(1.0 + smp.s / 2.0), 1e-10);
    EXPECT_NEAR(smp.v[0], 1.0 / (1.0 + smp.s / 2.0), 1e-10);
    EXPECT_EQ(smp.x.x[1], 0.0);
  }
  EXPECT_NEAR(path.at(1.3).x.x[0], 2.0 * std::log(1.65), 1e-9);
}

TEST(Autoparallel, SchwarzschildCircularOrbit) {
  const wf::Spacetime st = make("schwarzschild");
  const wf::DerivativeEngine engine(st.chart);
  const double r = 6.0;
  const auto v0 = wf::circular_orbit_tangent(st.params, r);
  EXPECT_NEAR(v0[3], std::sqrt(1.0 / (2.0 * r * r * r)), 1e-15);
  const auto path =
      wf::integrate_autoparallel(st.chart, wf::levi_civita(engine, st.g), wf::Point{0.0, r, M_PI / 2, 0.0}, v0, 100.0);
  EXPECT_FALSE(path.exited());
  for (std::size_t i = 0; i < path.size(); ++i) EXPECT_NEAR(path.sample(i).x.x[1], r, 1e-7);
  EXPECT_NEAR(path.at(100.0).x.x[3], 100.0 * v0[3], 1e-6);
}

TEST(Autoparallel, StopsAtTheChartBoundary) {
  const wf::Spacetime st = make("minkowski");
  const wf::DerivativeEngine engine(st.chart);
  const auto path = wf::integrate_autoparallel(st.chart, wf::levi_civita(engine, st.g), wf::Point{0, 0, 0, 0},
                                               {1, 1, 0, 0}, 5.0);
  EXPECT_TRUE(path.exited());
  EXPECT_LE(path.sample(path.size() - 1).x.x[1], 1.0);
}

TEST(NullGeodesic, FlrwRadialRayFollowsConformalTime) {
  const wf::Spacetime st = make("flrw-exp");
  const wf::DerivativeEngine engine(st.chart);
  const wf::Point x0{0.0, -0.9, 0.0, 0.0};
  const auto k0 = wf::null_direction(st.g, x0, {0.0, 1.0, 0.0, 0.0});
  const auto path = wf::integrate_null_geodesic(engine, st.g, x0, k0, 1.5);
  ASSERT_GT(path.size(), 2u);
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto smp = path.sample(i);
    const double t = smp.x.x[0];
    EXPECT_NEAR(smp.x.x[1], -0.9 + 10.0 * (1.0 - std::exp(-0.1 * t)), 1e-8);
  }
}

TEST(NullGeodesic, SchwarzschildRadialRay) {
  const wf::Spacetime st = make("schwarzschild");
  const wf::DerivativeEngine engine(st.chart);
  const wf::Point x0{0.0, 3.0, M_PI / 2, 0.0};
  const auto k0 = wf::null_direction(st.g, x0, {0.0, 1.0, 0.0, 0.0});
  EXPECT_NEAR(k0[1] / k0[0], 1.0 - 1.0 / 3.0, 1e-14);
  const auto path = wf::integrate_null_geodesic(engine, st.g, x0, k0, 5.0);
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto smp = path.sample(i);
    EXPECT_NEAR(smp.v[1] / smp.v[0], 1.0 - 1.0 / smp.x.x[1], 1e-8);
  }
}

TEST(NullGeodesic, NonNullStartIsRejected) {
  const wf::Spacetime st = make("minkowski");
  const wf::DerivativeEngine engine(st.chart);
  try {
    wf::integrate_null_geodesic(engine, st.g, wf::Point{0, 0, 0, 0}, {1.0, 0.5, 0.0, 0.0}, 1.0);
    FAIL();
  } catch (const wf::Error& e) {
    EXPECT_EQ(e.kind(), wf::ErrorKind::config);
  }
}

TEST(EpsNullCheck, ZeroCovectorGivesZeroDefect) {
  const wf::Spacetime st = make("flrw-exp");
  const wf::DerivativeEngine engine(st.chart);
  const wf::Point x0{0.0, -0.5, 0.0, 0.0};
  const auto path = wf::integrate_null_geodesic(engine, st.g, x0, wf::null_direction(st.g, x0, {0, 1, 0, 0}), 1.0);
  const auto r = wf::eps_null_check(st.g, wf::levi_civita(engine, st.g), path);
  EXPECT_GT(r.samples, 0u);
  EXPECT_LT(r.max_orthogonal, 1e-12);
  EXPECT_LT(r.max_parallel, 1e-8);
  EXPECT_LT(r.max_null_drift, 1e-10);
}

TEST(EpsNullCheck, TimelikeCovectorGivesParallelDefect) {
  const wf::Spacetime st = make("minkowski");
  const wf::DerivativeEngine engine(st.chart);
  const auto path = wf::integrate_null_geodesic(engine, st.g, wf::Point{0, 0, 0, 0}, {1, 1, 0, 0}, 0.5);
  const auto r = wf::eps_null_check(st.g, wf::eps_connection(engine, st.g, timelike_covector(4, 0.5)), path);
  EXPECT_NEAR(r.max_parallel, 1.0, 1e-12);
  EXPECT_LT(r.max_orthogonal, 1e-14);
}

TEST(EpsNullCheck, SeededCovectorDefectIsParallel) {
  const wf::Spacetime st = make("schwarzschild");
  const wf::DerivativeEngine engine(st.chart);
  const wf::Point x0{1.0, 4.0, 1.4, 0.5};
  const auto path = wf::integrate_null_geodesic(engine, st.g, x0, wf::null_direction(st.g, x0, {0, 0.3, 0.05, 0.1}), 3.0);
  const auto r = wf::eps_null_check(st.g, wf::eps_connection(engine, st.g, wf::seeded_covector(st.chart, 3, 0.5)), path);
  EXPECT_LT(r.max_orthogonal, 1e-8);
  EXPECT_GT(r.max_parallel, 0.0);
}

TEST(TrajectoryCompare, IdenticalAndReparametrizedPaths) {
  const wf::Spacetime st = make("flrw-exp");
  const wf::DerivativeEngine engine(st.chart);
  const auto lc = wf::levi_civita(engine, st.g);
  const wf::Point x0{0.5, 0.0, 0.1, 0.0};
  const auto a = wf::integrate_autoparallel(st.chart, lc, x0, {1.0, 0.2, 0.0, 0.0}, 2.0);
  const auto same = wf::trajectory_compare(a, a);
  EXPECT_EQ(same.max_deviation, 0.0);
  EXPECT_NEAR(same.common_arc, a.arc_length(), 1e-14);
  const auto b = wf::integrate_autoparallel(st.chart, lc, x0, {2.0, 0.4, 0.0, 0.0}, 1.0);
  EXPECT_LT(wf::trajectory_compare(a, b).max_deviation, 1e-8);
}

TEST(TrajectoryCompare, DifferentStartsAreAComparisonError) {
  const wf::Spacetime st = make("minkowski");
  const wf::DerivativeEngine engine(st.chart);
  const auto lc = wf::levi_civita(engine, st.g);
  const auto a = wf::integrate_autoparallel(st.chart, lc, wf::Point{0, 0, 0, 0}, {1, 0, 0, 0}, 1.0);
  const auto b = wf::integrate_autoparallel(st.chart, lc, wf::Point{0, 0.5, 0, 0}, {1, 0, 0, 0}, 1.0);
  try {
    wf::trajectory_compare(a, b);
    FAIL();
  } catch (const wf::Error& e) {
    EXPECT_EQ(e.kind(), wf::ErrorKind::comparison);
  }
}

TEST(FlowLine, ShearedFlowLineIsAutoparallelOfItsConnection) {
  const wf::Preset pr = wf::build("minkowski-sheared", 1);
  const wf::DerivativeEngine engine(pr.spacetime.chart);
  const auto b = wf::fluid_connection(engine, pr.spacetime.g, pr.fluid.n, pr.fluid.phi);
  const wf::Point x0{0.0, 0.1, 0.0, 0.0};
  const auto flow = wf::integrate_flow_line(pr.spacetime.chart, pr.fluid.n, x0, 1.0);
  const auto n0 = pr.fluid.n(x0);
  const wf::Coords<double> v0{n0(0), n0(1), n0(2), n0(3)};
  const auto auto_path = wf::integrate_autoparallel(pr.spacetime.chart, b.gamma, x0, v0, 1.0);
  const auto cmp = wf::trajectory_compare(flow, auto_path);
  EXPECT_GT(cmp.common_arc, 0.5);
  EXPECT_LT(cmp.max_deviation, 1e-6 * std::max(1.0, cmp.common_arc));
}

TEST(WorldlinePath, CsvExport) {
  const wf::Spacetime st = make("minkowski", 2);
  const wf::DerivativeEngine engine(st.chart);
  const auto path = wf::integrate_autoparallel(st.chart, wf::levi_civita(engine, st.g), wf::Point{0, 0}, {1, 0.5}, 0.1);
  std::ostringstream out;
  path.write_csv(out, st.chart.names());
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "s,t,x,dt,dx");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, path.size());
}
