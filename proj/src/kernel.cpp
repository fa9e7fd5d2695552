#include "rwre/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rwre {

namespace {
constexpr double kSumTol = 1e-12;
}

TransitionKernel::TransitionKernel(int dim_, std::vector<double> probs_)
    : dim(dim_), probs(std::move(probs_)) {
  if (dim < 2 || dim > kMaxDim)
    throw std::invalid_argument("TransitionKernel: dimension must be in [2, " +
                                std::to_string(kMaxDim) + "]");
  if (probs.size() != static_cast<std::size_t>(num_directions(dim)))
    throw std::invalid_argument("TransitionKernel: expected " +
                                std::to_string(num_directions(dim)) +
                                " entries, got " + std::to_string(probs.size()));
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0))
      throw std::invalid_argument("TransitionKernel: negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTol)
    throw std::invalid_argument("TransitionKernel: entries sum to " +
                                std::to_string(sum) + ", expected 1");
}

TransitionKernel TransitionKernel::uniform(int dim) {
  return TransitionKernel(
      dim, std::vector<double>(static_cast<std::size_t>(num_directions(dim)),
                               1.0 / num_directions(dim)));
}

double TransitionKernel::min_prob() const {
  double m = probs[0];
  for (double p : probs) m = std::min(m, p);
  return m;
}

bool TransitionKernel::symmetric(double tol) const {
  for (int e = 0; e < num_directions(dim); e += 2)
    if (std::abs(probs[e] - probs[e + 1]) > tol) return false;
  return true;
}

TransitionKernel TransitionKernel::reversed() const {
  std::vector<double> q(probs.size());
  for (int e = 0; e < num_directions(dim); ++e)
    q[static_cast<std::size_t>(e)] = probs[static_cast<std::size_t>(opposite_direction(e))];
  return TransitionKernel(dim, std::move(q));
}

std::string TransitionKernel::to_string() const {
  std::string s;
  char buf[32];
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (i) s += " ";
    std::snprintf(buf, sizeof(buf), "%.17g", probs[i]);
    s += buf;
  }
  return s;
}

Vec local_drift(const TransitionKernel& kernel) {
  Vec d{};
  for (int i = 0; i < kernel.dim; ++i)
    d[i] = kernel.probs[static_cast<std::size_t>(2 * i)] -
           kernel.probs[static_cast<std::size_t>(2 * i + 1)];
  return d;
}

double drift_norm(const Vec& v, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += v[i] * v[i];
  return std::sqrt(s);
}

}  // namespace rwre
