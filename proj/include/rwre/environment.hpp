#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rwre/kernel.hpp"
#include "rwre/lattice.hpp"
#include "rwre/perturbation.hpp"
#include "rwre/rng.hpp"

namespace rwre {

// A deterministic random environment omega(x,e) = p0(e) + eps * xi(x,e).
// Site kernels are a pure function of (seed, site): the atom at a site is
// selected by a counter-based hash, so unbounded lattices cost no memory.
// With a period L the environment wraps componentwise (torus mode).
class EnvironmentField {
 public:
  EnvironmentField(TransitionKernel base, double epsilon, PerturbationModel model,
                   std::uint64_t seed, std::optional<std::int64_t> period = {});

  int dim() const { return base_.dim; }
  double epsilon() const { return epsilon_; }
  double kappa() const { return kappa_; }
  std::uint64_t seed() const { return seed_; }
  std::optional<std::int64_t> period() const { return period_; }
  const TransitionKernel& base() const { return base_; }
  const PerturbationModel& model() const { return model_; }

  // Deterministic atom index at a site; wraps in torus mode.
  int atom_at(const Point& x) const {
    return model_.pick_atom(u01_from_bits(hash_site(seed_, wrap(x), dim())));
  }

  // omega(x, .) as a kernel; a reference into the per-atom cache.
  const TransitionKernel& site_kernel(const Point& x) const {
    return atom_kernels_[static_cast<std::size_t>(atom_at(x))];
  }

  const TransitionKernel& atom_kernel(int a) const {
    return atom_kernels_[static_cast<std::size_t>(a)];
  }

  // Direction sampled from omega(x, .) by CDF inversion of u in [0,1).
  int sample_direction(const Point& x, double u) const {
    const std::vector<double>& cdf = atom_dir_cdf_[static_cast<std::size_t>(atom_at(x))];
    int n = num_directions(dim());
    for (int e = 0; e < n - 1; ++e)
      if (u < cdf[static_cast<std::size_t>(e)]) return e;
    return n - 1;
  }

  // p_eps(e) = p0(e) + eps * E[xi(0,e)].
  TransitionKernel annealed_kernel() const;

  Point wrap(Point x) const {
    if (!period_) return x;
    std::int64_t L = *period_;
    for (int i = 0; i < dim(); ++i) {
      std::int64_t r = x[i] % L;
      x[i] = r < 0 ? r + L : r;
    }
    for (int i = dim(); i < kMaxDim; ++i) x[i] = 0;
    return x;
  }

 private:
  TransitionKernel base_;
  double epsilon_;
  PerturbationModel model_;
  std::uint64_t seed_;
  std::optional<std::int64_t> period_;
  double kappa_;
  std::vector<TransitionKernel> atom_kernels_;
  std::vector<std::vector<double>> atom_dir_cdf_;
};

// Parameter bundle for experiments: realize(seed) builds the concrete field.
// Annealed estimators draw fresh seeds per replica from one master seed.
struct EnvironmentSpec {
  TransitionKernel base;
  double epsilon = 0.0;
  PerturbationModel model;
  std::optional<std::int64_t> period;

  EnvironmentField realize(std::uint64_t seed) const {
    return EnvironmentField(base, epsilon, model, seed, period);
  }
};

inline EnvironmentField make_environment(TransitionKernel base, double epsilon,
                                         PerturbationModel model, std::uint64_t seed,
                                         std::optional<std::int64_t> period = {}) {
  return EnvironmentField(std::move(base), epsilon, std::move(model), seed, period);
}

// The standard test model around the uniform kernel.
EnvironmentSpec standard_test_spec(int dim, double epsilon,
                                   std::optional<std::int64_t> period = {});

}  // namespace rwre
