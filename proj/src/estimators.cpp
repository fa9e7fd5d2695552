#include "rwre/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rwre/parallel.hpp"
#include "rwre/stats.hpp"

namespace rwre {

VelocityEstimate estimate_velocity(const EnvironmentSpec& spec, int n_walks,
                                   std::uint64_t n_steps, std::uint64_t burn_in,
                                   std::uint64_t env_seed, std::uint64_t walk_seed,
                                   int workers) {
  if (n_walks < 1) throw std::invalid_argument("estimate_velocity: n_walks must be >= 1");
  if (n_steps <= burn_in)
    throw std::invalid_argument("estimate_velocity: n_steps must exceed burn_in");

  const int dim = spec.base.dim;
  std::vector<Vec> per_replica(static_cast<std::size_t>(n_walks));
  parallel_for(static_cast<std::size_t>(n_walks), workers, [&](std::size_t r) {
    EnvironmentField env = spec.realize(hash_combine(env_seed, r));
    WalkState w = make_walk(origin_point(), hash_combine(walk_seed, r));
    Point at_burn{};
    for (std::uint64_t k = 0; k < n_steps; ++k) {
      if (k == burn_in) at_burn = w.position;
      step(env, w);
    }
    Vec v{};
    double span = static_cast<double>(n_steps - burn_in);
    for (int i = 0; i < dim; ++i)
      v[i] = static_cast<double>(w.position[i] - at_burn[i]) / span;
    per_replica[r] = v;
  });

  VelocityEstimate est;
  est.n_walks = n_walks;
  est.n_steps = n_steps;
  est.burn_in = burn_in;
  est.env_seed = env_seed;
  est.walk_seed = walk_seed;
  for (int i = 0; i < dim; ++i) {
    SampleStats s;
    for (const Vec& v : per_replica) s.add(v[i]);
    est.mean[i] = s.mean();
    est.stderror[i] = s.stderror();
  }
  return est;
}

double WindowMeasureEstimate::tv_distance(const std::vector<double>& other) const {
  if (other.size() != q_estimate.size())
    throw std::invalid_argument("tv_distance: pmf size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < other.size(); ++i)
    s += std::abs(q_estimate[i] - other[i]);
  return 0.5 * s;
}

WindowMeasureEstimate estimate_window_measure(
    const EnvironmentSpec& spec, const Window& window, int n_walks,
    std::uint64_t n_steps, std::uint64_t burn_in, std::uint64_t env_seed,
    std::uint64_t walk_seed, int workers) {
  if (n_walks < 1)
    throw std::invalid_argument("estimate_window_measure: n_walks must be >= 1");
  if (burn_in == UINT64_MAX) burn_in = n_steps / 10;
  if (n_steps <= burn_in)
    throw std::invalid_argument("estimate_window_measure: n_steps must exceed burn_in");

  WindowMeasureEstimate est;
  est.window = window;
  est.codec = PatternCodec(spec.model.atom_count(),
                           static_cast<int>(window.sites.size()));
  est.n_walks = n_walks;
  est.n_steps = n_steps;
  est.burn_in = burn_in;
  est.env_seed = env_seed;
  est.walk_seed = walk_seed;

  const std::size_t np = est.codec.n_patterns;
  est.p_mass.assign(np, 0.0);
  for (std::size_t id = 0; id < np; ++id)
    est.p_mass[id] = pattern_p_mass(spec.model, est.codec, id);

  {
    Vec annealed_drift = local_drift(spec.realize(0).annealed_kernel());
    if (!(annealed_drift[0] > 0.0))
      est.warning =
          "no drift condition holds (E[d(0,omega)].e1 <= 0); environmental "
          "process convergence is not certified";
  }

  // Per-replica pattern frequencies, halves kept apart for the burn-in
  // diagnostic.
  std::vector<std::vector<double>> freq(static_cast<std::size_t>(n_walks));
  std::vector<std::vector<double>> first_half(static_cast<std::size_t>(n_walks));
  std::vector<std::vector<double>> second_half(static_cast<std::size_t>(n_walks));
  std::vector<std::vector<std::int64_t>> counts(static_cast<std::size_t>(n_walks));
  parallel_for(static_cast<std::size_t>(n_walks), workers, [&](std::size_t r) {
    EnvironmentField env = spec.realize(hash_combine(env_seed, r));
    WalkState w = make_walk(origin_point(), hash_combine(walk_seed, r));
    std::vector<std::int64_t> local(np, 0), half1(np, 0);
    std::uint64_t kept = n_steps - burn_in;
    std::uint64_t half_mark = burn_in + kept / 2;
    for (std::uint64_t k = 0; k < n_steps; ++k) {
      if (k >= burn_in) {
        std::uint64_t id = pattern_at(env, w.position, window, est.codec);
        ++local[id];
        if (k < half_mark) ++half1[id];
      }
      step(env, w);
    }
    std::vector<double> f(np), f1(np), f2(np);
    double tot = static_cast<double>(kept);
    double tot1 = static_cast<double>(kept / 2);
    double tot2 = tot - tot1;
    for (std::size_t id = 0; id < np; ++id) {
      f[id] = static_cast<double>(local[id]) / tot;
      f1[id] = static_cast<double>(half1[id]) / tot1;
      f2[id] = static_cast<double>(local[id] - half1[id]) / tot2;
    }
    freq[r] = std::move(f);
    first_half[r] = std::move(f1);
    second_half[r] = std::move(f2);
    counts[r] = std::move(local);
  });

  est.q_estimate.assign(np, 0.0);
  est.q_stderr.assign(np, 0.0);
  est.counts.assign(np, 0);
  double tv_half = 0.0;
  {
    std::vector<double> h1(np, 0.0), h2(np, 0.0);
    for (std::size_t id = 0; id < np; ++id) {
      SampleStats s;
      KahanSum k1, k2;
      for (int r = 0; r < n_walks; ++r) {
        s.add(freq[static_cast<std::size_t>(r)][id]);
        k1.add(first_half[static_cast<std::size_t>(r)][id]);
        k2.add(second_half[static_cast<std::size_t>(r)][id]);
        est.counts[id] += counts[static_cast<std::size_t>(r)][id];
      }
      est.q_estimate[id] = s.mean();
      est.q_stderr[id] = s.stderror();
      h1[id] = k1.value() / n_walks;
      h2[id] = k2.value() / n_walks;
    }
    for (std::size_t id = 0; id < np; ++id) tv_half += std::abs(h1[id] - h2[id]);
  }
  est.split_half_tv = 0.5 * tv_half;

  est.ratio.assign(np, 0.0);
  est.ratio_lo.assign(np, 0.0);
  est.ratio_hi.assign(np, 0.0);
  est.zero_count.assign(np, false);
  std::int64_t total_samples = static_cast<std::int64_t>(n_steps - burn_in) * n_walks;
  for (std::size_t id = 0; id < np; ++id) {
    double p = est.p_mass[id];
    est.ratio[id] = est.q_estimate[id] / p;
    if (est.counts[id] == 0) {
      est.zero_count[id] = true;
      // Zero-count pattern: ratio reported as the interval [0, upper].
      est.ratio_lo[id] = 0.0;
      est.ratio_hi[id] = wilson_ci(0, total_samples).hi / p;
    } else {
      est.ratio_lo[id] = std::max(0.0, (est.q_estimate[id] - 2.0 * est.q_stderr[id]) / p);
      est.ratio_hi[id] = (est.q_estimate[id] + 2.0 * est.q_stderr[id]) / p;
    }
  }
  return est;
}

MuDeltaEstimate estimate_mu_delta(const EnvironmentSpec& spec, double delta,
                                  const Window& window,
                                  const std::vector<std::uint64_t>& pattern_ids,
                                  int n_replicas, std::uint64_t env_seed,
                                  std::uint64_t walk_seed, int workers) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("estimate_mu_delta: delta must lie in (0,1)");
  if (n_replicas < 2)
    throw std::invalid_argument("estimate_mu_delta: need at least 2 replicas");

  PatternCodec codec(spec.model.atom_count(), static_cast<int>(window.sites.size()));
  std::vector<bool> accepts(codec.n_patterns, false);
  for (std::uint64_t id : pattern_ids) {
    if (id >= codec.n_patterns)
      throw std::invalid_argument("estimate_mu_delta: pattern id out of range");
    accepts[id] = true;
  }

  std::vector<double> nums(static_cast<std::size_t>(n_replicas));
  std::vector<double> dens(static_cast<std::size_t>(n_replicas));
  parallel_for(static_cast<std::size_t>(n_replicas), workers, [&](std::size_t r) {
    EnvironmentField env = spec.realize(hash_combine(env_seed, r));
    WalkState w = make_walk(origin_point(), hash_combine(walk_seed, r));
    KilledTrajectory traj = killed_run(env, delta, origin_point(), w);
    double num = 0.0;
    for (const Point& x : traj.path)
      if (accepts[pattern_at(env, x, window, codec)]) num += 1.0;
    nums[r] = num;
    dens[r] = static_cast<double>(traj.tau + 1);
  });

  MuDeltaEstimate est;
  est.delta = delta;
  est.n_replicas = n_replicas;
  est.env_seed = env_seed;
  est.walk_seed = walk_seed;
  SampleStats sn, sd;
  KahanSum cross;
  for (int r = 0; r < n_replicas; ++r) {
    sn.add(nums[static_cast<std::size_t>(r)]);
    sd.add(dens[static_cast<std::size_t>(r)]);
  }
  est.numerator_mean = sn.mean();
  est.denominator_mean = sd.mean();
  est.estimate = est.numerator_mean / est.denominator_mean;
  for (int r = 0; r < n_replicas; ++r)
    cross.add((nums[static_cast<std::size_t>(r)] - est.numerator_mean) *
              (dens[static_cast<std::size_t>(r)] - est.denominator_mean));
  double cov = cross.value() / std::max(1, n_replicas - 1);
  double var_ratio =
      (sn.variance() - 2.0 * est.estimate * cov +
       est.estimate * est.estimate * sd.variance()) /
      (est.denominator_mean * est.denominator_mean * static_cast<double>(n_replicas));
  est.stderror = std::sqrt(std::max(0.0, var_ratio));
  return est;
}

}  // namespace rwre
