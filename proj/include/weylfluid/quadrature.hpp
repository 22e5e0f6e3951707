#pragma once

#include <functional>
#include <span>
#include <vector>

#include "weylfluid/chart.hpp"

namespace weylfluid {

/// Pairwise (cascade) summation; the reduction order depends only on the length.
double pairwise_sum(std::span<const double> terms);

/// Composite Simpson nodes and weights on [a, b] with an odd node count >= 3.
struct SimpsonRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
SimpsonRule simpson_rule(Interval iv, int node_count);

struct QuadratureResult {
  double value = 0.0;        // at the requested resolution
  double coarse = 0.0;       // at half resolution
  double refined = 0.0;      // Richardson-extrapolated
  double error_estimate = 0.0;
};

/// Tensor-product composite Simpson over a box. `f` receives the node
/// coordinates in box order. One halving step provides the error estimate.
QuadratureResult simpson_box(const std::function<double(std::span<const double>)>& f,
                             const std::vector<Interval>& box, const std::vector<int>& nodes);

}  // namespace weylfluid
