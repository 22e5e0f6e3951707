#include "weylfluid/ode.hpp"

#include <algorithm>
#include <cmath>

#include "weylfluid/errors.hpp"

namespace weylfluid {

namespace {

// Dormand–Prince coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

double OdeSolution::interpolate(double s, std::size_t i) const {
  if (samples.empty()) throw Error(ErrorKind::comparison, "empty solution");
  if (samples.size() == 1) return samples.front().y[i];
  const bool forward = samples.back().s >= samples.front().s;
  auto before = [forward](const OdeSample& a, double v) { return forward ? a.s < v : a.s > v; };
  auto it = std::lower_bound(samples.begin(), samples.end(), s, before);
  std::size_t hi = static_cast<std::size_t>(std::distance(samples.begin(), it));
  hi = std::clamp<std::size_t>(hi, 1, samples.size() - 1);
  const OdeSample& A = samples[hi - 1];
  const OdeSample& B = samples[hi];
  const double h = B.s - A.s;
  const double t = (s - A.s) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t, h01 = -2 * t3 + 3 * t2,
               h11 = t3 - t2;
  return h00 * A.y[i] + h10 * h * A.dy[i] + h01 * B.y[i] + h11 * h * B.dy[i];
}

std::vector<double> OdeSolution::interpolate(double s) const {
  std::vector<double> out(samples.front().y.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = interpolate(s, i);
  return out;
}

OdeSolution integrate_ode(const OdeRhs& rhs, double s0, std::span<const double> y0, double s_end,
                          const StepperParams& params, const OdeStop& stop) {
  const std::size_t n = y0.size();
  const double dir = s_end >= s0 ? 1.0 : -1.0;
  std::vector<double> y(y0.begin(), y0.end()), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n),
      tmp(n), y_new(n);
  OdeSolution sol;
  double s = s0;
  rhs(s, y, k1);
  sol.samples.push_back({s, y, k1});
  double h = std::min(params.initial_step, params.max_step);
  if (std::abs(s_end - s0) < h) h = std::abs(s_end - s0);

  // tmp = y + ds * sum(c * k)
  using Term = std::pair<double, const std::vector<double>*>;
  auto stage = [&](double ds, std::initializer_list<Term> terms) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = y[i];
      for (const auto& [c, k] : terms) acc += ds * c * (*k)[i];
      tmp[i] = acc;
    }
  };

  while (dir * (s_end - s) > 0.0) {
    if (sol.steps >= params.max_steps)
      throw Error(ErrorKind::stiffness, "step budget exhausted before reaching the end point");
    h = std::min({h, params.max_step, std::abs(s_end - s)});
    const double ds = dir * h;
    bool failed = false;
    try {
      stage(ds, {{a21, &k1}});
      rhs(s + c2 * ds, tmp, k2);
      stage(ds, {{a31, &k1}, {a32, &k2}});
      rhs(s + c3 * ds, tmp, k3);
      stage(ds, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
      rhs(s + c4 * ds, tmp, k4);
      stage(ds, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
      rhs(s + c5 * ds, tmp, k5);
      stage(ds, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
      rhs(s + ds, tmp, k6);
      for (std::size_t i = 0; i < n; ++i)
        y_new[i] = y[i] + ds * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
      rhs(s + ds, y_new, k7);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::domain_exit) throw;
      failed = true;
    }
    double err = 0.0;
    if (!failed) {
      for (std::size_t i = 0; i < n; ++i) {
        const double e = ds * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double scale = params.abs_tol + params.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        err = std::max(err, std::abs(e) / scale);
      }
      if (!std::isfinite(err)) failed = true;
    }
    if (failed) {
      // the trial left the region where the rhs is defined; shrink and retry
      ++sol.rejected;
      h *= 0.25;
      if (h < params.min_step) {
        sol.stopped = true;
        return sol;
      }
      continue;
    }
    if (err <= 1.0) {
      if (stop && stop(s + ds, y_new)) {
        // shrink toward the boundary until the remaining step is negligible
        h *= 0.25;
        if (h < std::max(params.min_step, 1e-9 * std::abs(s_end - s0))) {
          sol.stopped = true;
          return sol;
        }
        continue;
      }
      s += ds;
      y = y_new;
      k1 = k7;
      ++sol.steps;
      sol.max_error_estimate = std::max(sol.max_error_estimate, err);
      sol.samples.push_back({s, y, k1});
      const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
      h *= grow;
    } else {
      ++sol.rejected;
      h *= std::max(0.1, 0.9 * std::pow(err, -0.2));
      if (h < params.min_step) throw Error(ErrorKind::stiffness, "step size underflow");
    }
  }
  return sol;
}

}  // namespace weylfluid
