#include "weylfluid/quadrature.hpp"

#include <cmath>

#include "weylfluid/errors.hpp"

namespace weylfluid {

double pairwise_sum(std::span<const double> terms) {
  if (terms.size() <= 8) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

SimpsonRule simpson_rule(Interval iv, int node_count) {
  if (node_count < 3 || node_count % 2 == 0)
    throw Error(ErrorKind::config, "Simpson rule needs an odd node count >= 3");
  SimpsonRule r;
  const double h = iv.length() / (node_count - 1);
  for (int i = 0; i < node_count; ++i) {
    r.nodes.push_back(iv.lo + i * h);
    double w = (i == 0 || i == node_count - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    r.weights.push_back(w * h / 3.0);
  }
  return r;
}

namespace {

double integrate(const std::function<double(std::span<const double>)>& f,
                 const std::vector<Interval>& box, const std::vector<int>& nodes) {
  const std::size_t dims = box.size();
  std::vector<SimpsonRule> rules;
  std::size_t total = 1;
  for (std::size_t i = 0; i < dims; ++i) {
    rules.push_back(simpson_rule(box[i], nodes[i]));
    total *= static_cast<std::size_t>(nodes[i]);
  }
  std::vector<double> terms(total);
  std::vector<double> coords(dims);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    double w = 1.0;
    for (std::size_t i = dims; i-- > 0;) {
      const std::size_t k = rest % rules[i].nodes.size();
      rest /= rules[i].nodes.size();
      coords[i] = rules[i].nodes[k];
      w *= rules[i].weights[k];
    }
    terms[flat] = w * f(coords);
  }
  return pairwise_sum(terms);
}

}  // namespace

QuadratureResult simpson_box(const std::function<double(std::span<const double>)>& f,
                             const std::vector<Interval>& box, const std::vector<int>& nodes) {
  if (box.size() != nodes.size()) throw Error(ErrorKind::config, "one node count per axis required");
  std::vector<int> half(nodes.size());
  bool can_halve = true;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    half[i] = (nodes[i] + 1) / 2;
    if (half[i] < 3 || half[i] % 2 == 0) can_halve = false;
  }
  QuadratureResult r;
  r.value = box.empty() ? f({}) : integrate(f, box, nodes);
  if (can_halve && !box.empty()) {
    r.coarse = integrate(f, box, half);
    r.error_estimate = std::abs(r.value - r.coarse) / 15.0;
    r.refined = r.value + (r.value - r.coarse) / 15.0;
  } else {
    r.coarse = r.value;
    r.refined = r.value;
  }
  return r;
}

}  // namespace weylfluid
