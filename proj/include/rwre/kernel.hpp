#pragma once

#include <string>
#include <vector>

#include "rwre/lattice.hpp"

namespace rwre {

// A probability vector over the 2d unit directions, in the canonical order
// (+e1, -e1, +e2, -e2, ...).
struct TransitionKernel {
  int dim = 0;
  std::vector<double> probs;

  TransitionKernel() = default;
  TransitionKernel(int dim_, std::vector<double> probs_);

  static TransitionKernel uniform(int dim);

  double operator()(int dir) const { return probs[static_cast<std::size_t>(dir)]; }
  double min_prob() const;
  bool uniformly_elliptic() const { return min_prob() > 0.0; }
  bool symmetric(double tol = 1e-12) const;  // p(e) == p(-e) for all e

  // p*(e) := p(-e); swaps each (+e_i, -e_i) pair.
  TransitionKernel reversed() const;

  // Canonical textual serialization in fixed direction order.
  std::string to_string() const;
};

// d(p) = sum_e e p(e); component i is p(+e_{i+1}) - p(-e_{i+1}).
Vec local_drift(const TransitionKernel& kernel);

double drift_norm(const Vec& v, int dim);

}  // namespace rwre
