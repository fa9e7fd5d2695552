#pragma once

#include <cstdint>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/walk.hpp"

namespace rwre {

// Site indexing on the torus (Z/L)^d, row-major with axis 0 fastest.
struct TorusIndexer {
  int dim = 2;
  std::int64_t L = 2;
  std::size_t n = 4;

  TorusIndexer() = default;
  TorusIndexer(int dim_, std::int64_t L_);

  std::size_t index(const Point& wrapped) const;
  Point point(std::size_t idx) const;
  std::size_t neighbor(std::size_t idx, int dir) const;
};

struct TorusSolveOptions {
  std::size_t dense_cap = 20000;     // dense solve up to this many states
  std::size_t max_states = 2000000;  // hard cap; error above
  int power_max_iters = 200000;
  double residual_tol = 1e-10;
};

// Exact finite-state realization of the environmental process on a
// periodized environment: stationary distribution, window pmf, velocity.
struct TorusOracle {
  int dim = 2;
  std::int64_t period = 2;
  std::uint64_t env_seed = 0;
  std::vector<double> pi;      // stationary distribution over sites
  double residual_inf = 0.0;   // || pi P - pi ||_inf
  Vec exact_velocity{};        // sum_x pi(x) d(x, omega)
  Window window;
  PatternCodec codec;
  std::vector<double> window_pmf;  // Q_B by pattern id
};

TorusOracle torus_solve(const EnvironmentField& env, const Window& window,
                        const TorusSolveOptions& opts = {});

// Brute-force stationary distribution by power iteration on the lazy chain
// (I + P)/2; the independent oracle for torus_solve in tests.
std::vector<double> torus_stationary_power(const EnvironmentField& env,
                                           int max_iters = 2000000,
                                           double tol = 1e-12);

// Centered occupation kernel of the homogeneous q-walk on the torus:
// D(y) = sum_n (q_n(0,y) - 1/N), normalized to sum_y D(y) = 0.
std::vector<double> torus_pseudo_green(const TransitionKernel& q, std::int64_t L);

// Torus analog of J_q: J(x) = D(-x) - D(0).
std::vector<double> torus_j_values(const TransitionKernel& q, std::int64_t L);

}  // namespace rwre
