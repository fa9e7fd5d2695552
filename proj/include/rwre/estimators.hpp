#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/torus.hpp"
#include "rwre/walk.hpp"

namespace rwre {

// Annealed quantities are estimated by double Monte Carlo: the outer level
// draws a fresh environment per replica, the inner level runs the walk.
// Standard errors are computed across replicas (outer level).

struct VelocityEstimate {
  Vec mean{};
  Vec stderror{};
  int n_walks = 0;
  std::uint64_t n_steps = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t env_seed = 0;
  std::uint64_t walk_seed = 0;
};

VelocityEstimate estimate_velocity(const EnvironmentSpec& spec, int n_walks,
                                   std::uint64_t n_steps, std::uint64_t burn_in,
                                   std::uint64_t env_seed, std::uint64_t walk_seed,
                                   int workers = 1);

struct WindowMeasureEstimate {
  Window window;
  PatternCodec codec;
  std::vector<double> p_mass;       // exact product pmf per pattern
  std::vector<double> q_estimate;   // time-averaged empirical pmf, pooled
  std::vector<double> q_stderr;     // across replicas
  std::vector<double> ratio;        // q / p
  std::vector<double> ratio_lo;     // CI band
  std::vector<double> ratio_hi;
  std::vector<std::int64_t> counts;
  std::vector<bool> zero_count;
  double split_half_tv = 0.0;  // first vs second half agreement diagnostic
  std::string warning;         // set when no drift condition holds
  int n_walks = 0;
  std::uint64_t n_steps = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t env_seed = 0;
  std::uint64_t walk_seed = 0;

  double tv_distance(const std::vector<double>& other_pmf) const;
};

// burn_in == UINT64_MAX selects the default n_steps / 10.
WindowMeasureEstimate estimate_window_measure(
    const EnvironmentSpec& spec, const Window& window, int n_walks,
    std::uint64_t n_steps, std::uint64_t burn_in, std::uint64_t env_seed,
    std::uint64_t walk_seed, int workers = 1);

struct MuDeltaEstimate {
  double delta = 0.0;
  double numerator_mean = 0.0;    // mean over replicas of sum_{n<=tau} f
  double denominator_mean = 0.0;  // mean of tau + 1; E = 1/(1-delta)
  double estimate = 0.0;          // ratio
  double stderror = 0.0;          // delta-method across replicas
  int n_replicas = 0;
  std::uint64_t env_seed = 0;
  std::uint64_t walk_seed = 0;
};

// f is the indicator of a set of window patterns; the site-sum of the paper
// collapses to a path-sum over the geometrically killed trajectory.
MuDeltaEstimate estimate_mu_delta(const EnvironmentSpec& spec, double delta,
                                  const Window& window,
                                  const std::vector<std::uint64_t>& pattern_ids,
                                  int n_replicas, std::uint64_t env_seed,
                                  std::uint64_t walk_seed, int workers = 1);

}  // namespace rwre
