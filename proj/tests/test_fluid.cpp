#include <gtest/gtest.h>

#include <cmath>

#include "weylfluid/catalog.hpp"
#include "weylfluid/conservation.hpp"
#include "weylfluid/fluid.hpp"
#include "weylfluid/quadrature.hpp"

namespace wf = weylfluid;

namespace {

wf::Spacetime make(const std::string& kind, int dim = 4) {
  wf::SpacetimeParams p;
  p.kind = kind;
  p.dim = dim;
  return wf::build_spacetime(p, 7);
}

wf::FluidState rest_fluid(int m, double p, double rho, double phi) {
  return {wf::coordinate_vector(m, 0), wf::constant_scalar(m, p), wf::constant_scalar(m, rho),
          wf::constant_scalar(m, phi)};
}

const wf::Point kOrigin{0.0, 0.0, 0.0, 0.0};

}  // namespace

TEST(FluidCovector, MinkowskiRestFrame) {
  const wf::Spacetime st = make("minkowski");
  const wf::DerivativeEngine engine(st.chart);
  const auto A = wf::fluid_covector(engine, st.g, wf::coordinate_vector(4, 0), wf::constant_scalar(4, 0.5))(kOrigin);
  EXPECT_DOUBLE_EQ(A(0), -0.5);
  for (int k = 1; k < 4; ++k) EXPECT_EQ(A(k), 0.0);
  const auto A0 = wf::fluid_covector(engine, st.g, wf::coordinate_vector(4, 0), wf::constant_scalar(4, 0.0))(kOrigin);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(A0(k), 0.0);
}

TEST(FluidCovector, ComovingFlrwFlowIsMetricGeodesic) {
  const wf::Spacetime st = make("flrw-exp");
  const wf::DerivativeEngine engine(st.chart);
  const auto A = wf::fluid_covector(engine, st.g, wf::coordinate_vector(4, 0), wf::constant_scalar(4, 0.3));
  const auto v = A(wf::Point{2.0, 0.1, 0.1, 0.1});
  EXPECT_NEAR(v(0), -0.3, 1e-15);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(v(k), 0.0, 1e-15);
}

TEST(GeodesicDefect, VanishesForMatchingReparametrization) {
  for (const auto& name : wf::preset_names()) {
    const wf::Preset pr = wf::build(name, 3);
    const wf::DerivativeEngine engine(pr.spacetime.chart);
    const wf::WeylBundle b = wf::fluid_connection(engine, pr.spacetime.g, pr.fluid.n, pr.fluid.phi);
    const auto D = wf::geodesic_defect(engine, b, pr.fluid.n, pr.fluid.phi);
    for (const auto& p : wf::sample_points(pr.spacetime.chart, {2, 6, 5})) {
      const auto d = D(p);
      for (int k = 0; k < pr.spacetime.chart.dim(); ++k) EXPECT_LT(std::abs(d(k)), 1e-9) << name;
    }
  }
}

TEST(GeodesicDefect, MismatchedReparametrization) {
  const wf::Spacetime st = make("minkowski");
  const wf::DerivativeEngine engine(st.chart);
  const wf::VectorField n = wf::coordinate_vector(4, 0);
  const wf::WeylBundle b = wf::fluid_connection(engine, st.g, n, wf::constant_scalar(4, 0.5));
  const auto D = wf::geodesic_defect(engine, b, n, wf::constant_scalar(4, 0.0))(kOrigin);
  EXPECT_NEAR(D(0), 0.5, 1e-15);
  for (int k = 1; k < 4; ++k) EXPECT_EQ(D(k), 0.0);
}

TEST(StressEnergy, PerfectFluidComponents) {
  const wf::Spacetime st = make("minkowski");
  const wf::FluidState f = rest_fluid(4, 0.2, 1.0, 0.0);
  const auto T = wf::stress_energy(st.g, f.n, f.p, f.rho)(kOrigin);
  const double expected[4] = {1.0, 0.2, 0.2, 0.2};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) EXPECT_NEAR(T(a, b), a == b ? expected[a] : 0.0, 1e-15);
  const wf::FluidState dust = rest_fluid(4, 0.0, 1.0, 0.0);
  const auto Td = wf::stress_energy(st.g, dust.n, dust.p, dust.rho)(kOrigin);
  EXPECT_EQ(Td(0, 0), 1.0);
  EXPECT_EQ(Td(1, 1), 0.0);
}

TEST(StressEnergy, FlowIsEigenvectorWithEigenvalueMinusRho) {
  const wf::Preset pr = wf::build("flrw-radiation-sheared", 5);
  const auto& g = pr.spacetime.g;
  const auto Tup = wf::raise_both(g, wf::stress_energy(g, pr.fluid.n, pr.fluid.p, pr.fluid.rho));
  const int m = pr.spacetime.chart.dim();
  for (const auto& p : wf::sample_points(pr.spacetime.chart, {2, 5, 1})) {
    const auto T = wf::stress_energy(g, pr.fluid.n, pr.fluid.p, pr.fluid.rho)(p);
    const auto gv = g(p);
    const auto n = pr.fluid.n(p);
    const double rho = pr.fluid.rho(p)();
    // T^mu_nu n^nu = -ρ n^mu, checked through the lowered form T_{mu nu} n^nu = -ρ n_mu
    for (int a = 0; a < m; ++a) {
      double lhs = 0.0, nlow = 0.0;
      for (int b = 0; b < m; ++b) {
        lhs += T(a, b) * n(b);
        nlow += gv(a, b) * n(b);
      }
      EXPECT_NEAR(lhs, -rho * nlow, 1e-12);
    }
    const auto U = Tup(p);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) EXPECT_NEAR(U(a, b), U(b, a), 1e-14);
  }
}

TEST(FluidValidation, FlagsNegativeDensity) {
  const wf::Spacetime st = make("minkowski");
  const wf::FluidState f = rest_fluid(4, 0.0, -1.0, 0.0);
  const auto v = wf::validate_fluid(st.g, f, {kOrigin});
  EXPECT_LT(v.normalization_residual, 1e-15);
  EXPECT_FALSE(v.warnings.empty());
}

TEST(ConservationConditions, DustWithConstantReparametrization) {
  const wf::Spacetime st = make("minkowski");
  const wf::DerivativeEngine engine(st.chart);
  const wf::FluidState f = rest_fluid(4, 0.0, 1.0, 0.5);
  const wf::WeylBundle b = wf::fluid_connection(engine, st.g, f.n, f.phi);
  const auto c = wf::conservation_condition_residuals(engine, st.g, b.gamma, f);
  EXPECT_NEAR(c.c1(kOrigin)(), 2.5, 1e-14);
  const auto c2 = c.c2(kOrigin);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(c2(k), 0.0);

  // Index-loop oracle: W^mu = Γ^mu_{nu l} T^{l nu} + Γ^nu_{nu l} T^{mu l} for constant T^{mu nu}.
  const auto G = b.gamma(kOrigin);
  double W[4] = {};
  for (int mu = 0; mu < 4; ++mu) W[mu] = G(mu, 0, 0) + (mu == 0 ? G(0, 0, 0) + G(1, 1, 0) + G(2, 2, 0) + G(3, 3, 0) : 0.0);
  const auto Wlib = wf::weyl_divergence_T(engine, st.g, b.gamma, wf::stress_energy(st.g, f.n, f.p, f.rho))(kOrigin);
  for (int mu = 0; mu < 4; ++mu) EXPECT_NEAR(Wlib(mu), W[mu], 1e-14);
  EXPECT_NEAR(W[0], 2.5, 1e-14);
}

TEST(ConservationConditions, DecompositionHoldsOnPresets) {
  for (const auto& name : wf::preset_names()) {
    const wf::Preset pr = wf::build(name, 11);
    const wf::DerivativeEngine engine(pr.spacetime.chart);
    const wf::WeylBundle b = wf::fluid_connection(engine, pr.spacetime.g, pr.fluid.n, pr.fluid.phi);
    const auto r = wf::decomposition_residuals(engine, b, pr.fluid);
    for (const auto& p : wf::sample_points(pr.spacetime.chart, {2, 5, 3})) {
      EXPECT_LT(std::abs(r.along(p)()), 1e-8) << name;
      const auto t = r.transverse(p);
      for (int k = 0; k < pr.spacetime.chart.dim(); ++k) EXPECT_LT(std::abs(t(k)), 1e-8) << name;
    }
  }
}

TEST(ParticleCurrent, RestDustAndFlrwClosedForm) {
  const wf::Spacetime mink = make("minkowski");
  const wf::FluidState dust = rest_fluid(4, 0.0, 1.0, 0.0);
  const auto J = wf::particle_current(mink.g, wf::stress_energy(mink.g, dust.n, dust.p, dust.rho), dust.n)(kOrigin);
  EXPECT_DOUBLE_EQ(J(0), -1.0);
  for (int k = 1; k < 4; ++k) EXPECT_EQ(J(k), 0.0);

  const wf::Spacetime st = make("flrw-exp");
  const wf::DerivativeEngine engine(st.chart);
  wf::FluidState f = rest_fluid(4, 0.0, 1.0, 0.0);
  f.rho = wf::ScalarField(wf::Field::closed_form(4, "", [](const auto& x, auto& out) { out() = wf::math::exp(-0.3 * x[0]); }));
  const wf::VectorDensityField Jf = wf::particle_current(st.g, wf::stress_energy(st.g, f.n, f.p, f.rho), f.n);
  const auto div = wf::current_divergence(engine, Jf);
  const auto res = wf::current_closed_form_residual(st.g, Jf, f);
  for (double t : {-0.5, 0.0, 3.0, 8.0}) {
    const wf::Point x{t, 0.3, -0.2, 0.1};
    EXPECT_NEAR(Jf(x)(0), -1.0, 1e-13);
    EXPECT_NEAR(div(x)(), 0.0, 1e-13);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(res(x)(k), 0.0, 1e-13);
  }
}

TEST(ParticleCurrent, LinearDensityDivergence) {
  const wf::Spacetime st = make("minkowski");
  const wf::DerivativeEngine engine(st.chart);
  wf::FluidState f = rest_fluid(4, 0.0, 1.0, 0.0);
  f.rho = wf::ScalarField(wf::Field::closed_form(4, "", [](const auto& x, auto& out) { out() = 1.0 + 0.1 * x[0]; }));
  const auto J = wf::particle_current(st.g, wf::stress_energy(st.g, f.n, f.p, f.rho), f.n);
  EXPECT_NEAR(wf::current_divergence(engine, J)(wf::Point{0.5, 0.2, 0.1, 0.0})(), -0.1, 1e-14);
}

TEST(ParticleCurrent, IdentityHoldsOnPresets) {
  for (const auto& name : wf::preset_names()) {
    const wf::Preset pr = wf::build(name, 2);
    const wf::DerivativeEngine engine(pr.spacetime.chart);
    const wf::WeylBundle b = wf::fluid_connection(engine, pr.spacetime.g, pr.fluid.n, pr.fluid.phi);
    const auto T = wf::stress_energy(pr.spacetime.g, pr.fluid.n, pr.fluid.p, pr.fluid.rho);
    const auto r = wf::current_identity_residual(engine, b, T, pr.fluid.n);
    for (const auto& p : wf::sample_points(pr.spacetime.chart, {2, 5, 9})) EXPECT_LT(std::abs(r(p)()), 1e-8) << name;
  }
}

TEST(SliceNumber, ZeroCurrentAndUnitBox) {
  const wf::Spacetime st = make("minkowski");
  const wf::FluidState dust = rest_fluid(4, 0.0, 1.0, 0.0);
  const auto J = wf::particle_current(st.g, wf::stress_energy(st.g, dust.n, dust.p, dust.rho), dust.n);
  wf::SliceSpec unit{0, 0.0, {{0, 1}, {0, 1}, {0, 1}}, {5, 5, 5}};
  EXPECT_NEAR(wf::number_on_slice(st.chart, J, unit).value, -1.0, 1e-14);
  const wf::VectorDensityField zero(wf::coordinate_vector(4, 0, 0.0));
  EXPECT_EQ(wf::number_on_slice(st.chart, zero, unit).value, 0.0);
}

TEST(SliceNumber, ConservedFlrwDustIsSliceIndependent) {
  wf::SpacetimeParams sp;
  sp.kind = "flrw-exp";
  wf::FluidParams fp;
  fp.density = "conserved";
  const wf::Preset pr = wf::build(sp, fp, 1);
  const auto J = wf::particle_current(pr.spacetime.g, wf::stress_energy(pr.spacetime.g, pr.fluid.n, pr.fluid.p, pr.fluid.rho),
                                      pr.fluid.n);
  const double n0 = wf::number_on_slice(pr.spacetime.chart, J, wf::full_slice(pr.spacetime.chart, 0, 0.0, 9)).value;
  const double n5 = wf::number_on_slice(pr.spacetime.chart, J, wf::full_slice(pr.spacetime.chart, 0, 5.0, 9)).value;
  EXPECT_NEAR(n0, -8.0, 1e-12);
  EXPECT_NEAR(n5 / n0, 1.0, 1e-12);
}

TEST(ConditionScalars, DustAndFlrwExamples) {
  const wf::Spacetime mink = make("minkowski");
  const wf::DerivativeEngine me(mink.chart);
  const wf::FluidState dust = rest_fluid(4, 0.0, 2.0, 0.5);
  const auto sd = wf::condition_scalars(me, wf::fluid_connection(me, mink.g, dust.n, dust.phi), dust);
  EXPECT_NEAR(sd.s1(kOrigin)(), 1.0, 1e-14);
  EXPECT_NEAR(sd.s2(kOrigin)(), 1.0, 1e-14);

  const wf::Spacetime st = make("flrw-exp");
  const wf::DerivativeEngine engine(st.chart);
  const wf::FluidState f = rest_fluid(4, 0.2, 1.0, 0.3);
  const auto s = wf::condition_scalars(engine, wf::fluid_connection(engine, st.g, f.n, f.phi), f);
  const wf::Point x{1.7, 0.1, 0.2, 0.3};
  EXPECT_NEAR(s.s1(x)(), 0.2 * 0.3 + (1.0 + 3 * 0.2) * 0.3, 1e-13);
  EXPECT_NEAR(s.s1_closed_form(x)(), 0.54, 1e-13);
  EXPECT_NEAR(s.s2(x)(), 0.3, 1e-14);
  EXPECT_NEAR(s.s1_residual(x)(), 0.0, 1e-13);
  EXPECT_NEAR(s.s2_residual(x)(), 0.0, 1e-14);
}

TEST(Quadrature, SimpsonIsExactOnCubics) {
  const auto r = wf::simpson_rule({0.0, 2.0}, 5);
  double sum = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * std::pow(r.nodes[i], 3);
  EXPECT_NEAR(sum, 4.0, 1e-14);
  const auto box = wf::simpson_box([](std::span<const double> x) { return x[0] * x[0] * x[1]; }, {{0, 1}, {0, 2}},
                                   {9, 9});
  EXPECT_NEAR(box.value, 2.0 / 3.0, 1e-14);
  EXPECT_LT(box.error_estimate, 1e-13);
}

TEST(Quadrature, ConvergesOnSmoothIntegrand) {
  const auto r = wf::simpson_box([](std::span<const double> x) { return std::sin(x[0]); }, {{0, M_PI}}, {33});
  EXPECT_NEAR(r.value, 2.0, 1e-5);
  EXPECT_NEAR(r.refined, 2.0, 1e-8);
  EXPECT_LT(std::abs(r.refined - 2.0), std::abs(r.value - 2.0));
}

TEST(Quadrature, EvenNodeCountIsRejected) {
  EXPECT_THROW(wf::simpson_rule({0.0, 1.0}, 4), wf::Error);
}

TEST(Quadrature, PairwiseSumIsOrderFixed) {
  std::vector<double> v(1000, 0.1);
  EXPECT_NEAR(wf::pairwise_sum(v), 100.0, 1e-12);
}
