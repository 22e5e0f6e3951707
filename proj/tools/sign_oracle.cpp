// Brute-force index-loop oracle that fixes the signs relating the projections
// of ∇^Γ_nu T^{mu nu} to the two fluid conservation scalars. It deliberately
// shares no code with the library: flat Minkowski space, plain arrays and
// central differences only.
//
//   sign_oracle            print the generated header to stdout
//   sign_oracle --check F  exit non-zero unless F matches the oracle output

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int M = 4;
using Vec = std::array<double, M>;
using Mat = std::array<Vec, M>;

constexpr double eta(int a, int b) { return a != b ? 0.0 : (a == 0 ? -1.0 : 1.0); }

Vec velocity(const Vec& x) {
  Vec u{1.0, 0.1 * x[1], 0.05 * x[0], 0.0};
  double nn = 0.0;
  for (int a = 0; a < M; ++a) nn += eta(a, a) * u[a] * u[a];
  const double s = 1.0 / std::sqrt(-nn);
  for (double& c : u) c *= s;
  return u;
}
double pressure(const Vec& x) { return 0.2 + 0.05 * x[1] + 0.03 * x[0]; }
double density(const Vec& x) { return 1.0 + 0.1 * x[0] + 0.02 * x[2]; }
double reparam(const Vec& x) { return 0.3 + 0.1 * x[1]; }

Mat t_up(const Vec& x) {
  const Vec n = velocity(x);
  const double p = pressure(x), r = density(x);
  Mat t{};
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) t[a][b] = p * eta(a, b) + (p + r) * n[a] * n[b];
  return t;
}

constexpr double kStep = 1e-5;

template <class F>
auto d(F f, const Vec& x, int mu) {
  Vec xp = x, xm = x;
  xp[mu] += kStep;
  xm[mu] -= kStep;
  auto fp = f(xp), fm = f(xm);
  decltype(fp) out{};
  if constexpr (std::is_same_v<decltype(fp), double>) {
    out = (fp - fm) / (2 * kStep);
  } else {
    for (std::size_t i = 0; i < fp.size(); ++i) {
      if constexpr (std::is_same_v<std::decay_t<decltype(fp[i])>, double>) {
        out[i] = (fp[i] - fm[i]) / (2 * kStep);
      } else {
        for (std::size_t j = 0; j < fp[i].size(); ++j) out[i][j] = (fp[i][j] - fm[i][j]) / (2 * kStep);
      }
    }
  }
  return out;
}

struct Outcome {
  double ratio_a = 0.0;
  double ratio_b = 0.0;
  int sign_a = 0;
  int sign_b = 0;
  double residual_a = 0.0;
  double residual_b = 0.0;
};

Outcome run() {
  const Vec x{0.3, 0.4, -0.2, 0.1};
  const Vec n = velocity(x);
  Vec n_low{};
  for (int a = 0; a < M; ++a) n_low[a] = eta(a, a) * n[a];
  const double p = pressure(x), r = density(x), phi = reparam(x);

  // ∂_mu n^a
  std::array<Vec, M> dn{};
  for (int mu = 0; mu < M; ++mu) dn[mu] = d(velocity, x, mu);

  // A_nu = n^mu ∂_mu n_nu + φ n_nu (flat metric, Christoffels vanish)
  Vec A{};
  for (int nu = 0; nu < M; ++nu) {
    double s = 0.0;
    for (int mu = 0; mu < M; ++mu) s += n[mu] * eta(nu, nu) * dn[mu][nu];
    A[nu] = s + phi * n_low[nu];
  }
  // Γ^a_{bc} = η^{ae} η_{bc} A_e - δ^a_b A_c - δ^a_c A_b
  double G[M][M][M];
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b)
      for (int c = 0; c < M; ++c)
        G[a][b][c] = eta(a, a) * eta(b, c) * A[a] - (a == b ? A[c] : 0.0) - (a == c ? A[b] : 0.0);

  const Mat T = t_up(x);
  std::array<Mat, M> dT{};
  for (int mu = 0; mu < M; ++mu) dT[mu] = d(t_up, x, mu);

  Vec W{};
  for (int mu = 0; mu < M; ++mu) {
    double s = 0.0;
    for (int nu = 0; nu < M; ++nu) {
      s += dT[nu][mu][nu];
      for (int l = 0; l < M; ++l) s += G[mu][nu][l] * T[l][nu] + G[nu][nu][l] * T[mu][l];
    }
    W[mu] = s;
  }

  double div_gamma = 0.0;
  for (int nu = 0; nu < M; ++nu) {
    div_gamma += dn[nu][nu];
    for (int l = 0; l < M; ++l) div_gamma += G[nu][nu][l] * n[l];
  }
  double n_drho = 0.0;
  for (int nu = 0; nu < M; ++nu) n_drho += n[nu] * d(density, x, nu);
  const double c1 = (p + r) * div_gamma - (p - r) * phi + n_drho;

  Vec c2{};
  for (int mu = 0; mu < M; ++mu) {
    double s = 0.0;
    for (int nu = 0; nu < M; ++nu) {
      s += (eta(mu, nu) + n[mu] * n[nu]) * d(pressure, x, nu);
      s -= 2.0 * p * n[nu] * dn[nu][mu];
    }
    c2[mu] = s;
  }

  double along = 0.0;
  for (int mu = 0; mu < M; ++mu) along += n_low[mu] * W[mu];
  Vec ortho{};
  for (int mu = 0; mu < M; ++mu) {
    double s = 0.0;
    for (int l = 0; l < M; ++l) s += ((mu == l ? 1.0 : 0.0) + n[mu] * n_low[l]) * W[l];
    ortho[mu] = s;
  }

  Outcome o;
  o.ratio_a = along / c1;
  o.sign_a = o.ratio_a > 0 ? 1 : -1;
  o.residual_a = std::abs(along - o.sign_a * c1);
  int best = 0;
  for (int mu = 0; mu < M; ++mu)
    if (std::abs(c2[mu]) > std::abs(c2[best])) best = mu;
  o.ratio_b = ortho[best] / c2[best];
  o.sign_b = o.ratio_b > 0 ? 1 : -1;
  for (int mu = 0; mu < M; ++mu)
    o.residual_b = std::max(o.residual_b, std::abs(ortho[mu] - o.sign_b * c2[mu]));
  return o;
}

std::string header(const Outcome& o) {
  char buf[2048];
  std::snprintf(buf, sizeof buf,
                "#pragma once\n"
                "\n"
                "// Generated by tools/sign_oracle.cpp; do not edit by hand.\n"
                "// Oracle instance: Minkowski, n = normalize(dt + 0.1 x dx + 0.05 t dy),\n"
                "//   p = 0.2 + 0.05 x + 0.03 t, rho = 1 + 0.1 t + 0.02 y, phi = 0.3 + 0.1 x,\n"
                "//   evaluated at (t, x, y, z) = (0.3, 0.4, -0.2, 0.1).\n"
                "// n_mu W^mu / C1 = %.6f (residual below 1e-6)\n"
                "// (P W)^mu / C2^mu = %.6f (residual below 1e-6)\n"
                "\n"
                "namespace weylfluid::signs {\n"
                "\n"
                "/// n_mu ∇^Γ_nu T^{mu nu} = kAlongFlow * C1\n"
                "inline constexpr double kAlongFlow = %d.0;\n"
                "/// (δ^mu_l + n^mu n_l) ∇^Γ_nu T^{l nu} = kTransverse * C2^mu\n"
                "inline constexpr double kTransverse = %d.0;\n"
                "\n"
                "}  // namespace weylfluid::signs\n",
                o.ratio_a, o.ratio_b, o.sign_a, o.sign_b);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  const Outcome o = run();
  if (o.residual_a > 1e-6 || o.residual_b > 1e-6) {
    std::cerr << "decomposition does not hold on the oracle instance\n";
    return 2;
  }
  const std::string text = header(o);
  if (argc == 3 && std::string(argv[1]) == "--check") {
    std::ifstream in(argv[2]);
    std::stringstream ss;
    ss << in.rdbuf();
    if (ss.str() != text) {
      std::cerr << "frozen sign constants differ from oracle output\n";
      return 1;
    }
    std::cout << "sign constants match oracle (" << o.sign_a << ", " << o.sign_b << ")\n";
    return 0;
  }
  std::cout << text;
  return 0;
}
