#pragma once

// Embedded Runge–Kutta 5(4) (Dormand–Prince) with adaptive step control and
// cubic Hermite dense output between accepted steps.

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace weylfluid {

struct StepperParams {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double initial_step = 1e-2;
  double max_step = std::numeric_limits<double>::infinity();
  double min_step = 1e-13;
  int max_steps = 200000;
};

/// dy/ds = f(s, y). May throw to signal that the state left the valid region.
using OdeRhs = std::function<void(double s, std::span<const double> y, std::span<double> dy)>;
/// Returns true when an accepted state must not be kept (e.g. left the chart).
using OdeStop = std::function<bool(double s, std::span<const double> y)>;

struct OdeSample {
  double s = 0.0;
  std::vector<double> y;
  std::vector<double> dy;
};

struct OdeSolution {
  std::vector<OdeSample> samples;
  bool stopped = false;          // stop predicate or rhs failure truncated the run
  int steps = 0;
  int rejected = 0;
  double max_error_estimate = 0.0;  // largest scaled local error among accepted steps

  /// Hermite interpolation of component `i` at parameter s within the samples.
  double interpolate(double s, std::size_t i) const;
  std::vector<double> interpolate(double s) const;
};

/// Integrates from s0 toward s_end (either direction). Throws a stiffness
/// error if the step size underflows.
OdeSolution integrate_ode(const OdeRhs& rhs, double s0, std::span<const double> y0, double s_end,
                          const StepperParams& params, const OdeStop& stop = {});

}  // namespace weylfluid
