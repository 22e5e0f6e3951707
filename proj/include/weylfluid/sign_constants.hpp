#pragma once

// Generated by tools/sign_oracle.cpp; do not edit by hand.
// Oracle instance: Minkowski, n = normalize(dt + 0.1 x dx + 0.05 t dy),
//   p = 0.2 + 0.05 x + 0.03 t, rho = 1 + 0.1 t + 0.02 y, phi = 0.3 + 0.1 x,
//   evaluated at (t, x, y, z) = (0.3, 0.4, -0.2, 0.1).
// n_mu W^mu / C1 = -1.000000 (residual below 1e-6)
// (P W)^mu / C2^mu = 1.000000 (residual below 1e-6)

namespace weylfluid::signs {

/// n_mu ∇^Γ_nu T^{mu nu} = kAlongFlow * C1
inline constexpr double kAlongFlow = -1.0;
/// (δ^mu_l + n^mu n_l) ∇^Γ_nu T^{l nu} = kTransverse * C2^mu
inline constexpr double kTransverse = 1.0;

}  // namespace weylfluid::signs
