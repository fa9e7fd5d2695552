#include "rwre/ballistic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rwre/parallel.hpp"
#include "rwre/rng.hpp"
#include "rwre/stats.hpp"

namespace rwre {

double KalikowObjective::operator()(const std::vector<double>& g) const {
  double val = 0.0;
  for (std::size_t a = 0; a < weights.size(); ++a) {
    double den = 0.0;
    for (int e = 0; e < n_dirs; ++e)
      den += omega[a][static_cast<std::size_t>(e)] * g[static_cast<std::size_t>(e)];
    val += weights[a] * drift_e1[a] / den;
  }
  return val;
}

KalikowObjective kalikow_objective(const PerturbationModel& model,
                                   const TransitionKernel& base, double epsilon) {
  KalikowObjective obj;
  obj.n_dirs = num_directions(base.dim);
  for (int a = 0; a < model.atom_count(); ++a) {
    std::vector<double> w(static_cast<std::size_t>(obj.n_dirs));
    for (int e = 0; e < obj.n_dirs; ++e)
      w[static_cast<std::size_t>(e)] = base.probs[static_cast<std::size_t>(e)] +
                                       epsilon *
                                           model.atom(a).zeta[static_cast<std::size_t>(e)];
    obj.weights.push_back(model.atom(a).weight);
    obj.drift_e1.push_back(w[0] - w[1]);
    obj.omega.push_back(std::move(w));
  }
  return obj;
}

namespace {

// Projected gradient descent on one face {g(face) = 1}, g in [0,1]^{2d}.
double minimize_on_face(const KalikowObjective& obj, int face,
                        std::vector<double> g, const KalikowOptions& opts,
                        std::vector<double>* best_g, int* iters_used) {
  const int n = obj.n_dirs;
  const double h = 1e-7;
  g[static_cast<std::size_t>(face)] = 1.0;
  double f = obj(g);
  int it = 0;
  for (; it < opts.max_iters; ++it) {
    std::vector<double> grad(static_cast<std::size_t>(n), 0.0);
    for (int e = 0; e < n; ++e) {
      if (e == face) continue;
      std::vector<double> gp = g, gm = g;
      gp[static_cast<std::size_t>(e)] = std::min(1.0, g[static_cast<std::size_t>(e)] + h);
      gm[static_cast<std::size_t>(e)] = std::max(0.0, g[static_cast<std::size_t>(e)] - h);
      double span = gp[static_cast<std::size_t>(e)] - gm[static_cast<std::size_t>(e)];
      grad[static_cast<std::size_t>(e)] = span > 0.0 ? (obj(gp) - obj(gm)) / span : 0.0;
    }
    double alpha = 0.5;
    bool improved = false;
    for (int bt = 0; bt < 40; ++bt, alpha *= 0.5) {
      std::vector<double> trial = g;
      double move = 0.0;
      for (int e = 0; e < n; ++e) {
        if (e == face) continue;
        double v = std::clamp(g[static_cast<std::size_t>(e)] -
                                  alpha * grad[static_cast<std::size_t>(e)],
                              0.0, 1.0);
        move = std::max(move, std::abs(v - g[static_cast<std::size_t>(e)]));
        trial[static_cast<std::size_t>(e)] = v;
      }
      if (move < opts.tol) break;
      double ft = obj(trial);
      if (ft < f) {
        g = std::move(trial);
        f = ft;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  *iters_used += it;
  *best_g = g;
  return f;
}

// Coordinate-wise nested grid refinement around g.
double grid_polish(const KalikowObjective& obj, int face, std::vector<double>& g,
                   const KalikowOptions& opts) {
  const int n = obj.n_dirs;
  double f = obj(g);
  double radius = 0.5;
  for (int round = 0; round < opts.polish_rounds; ++round) {
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (int e = 0; e < n; ++e) {
        if (e == face) continue;
        double center = g[static_cast<std::size_t>(e)];
        for (int k = 0; k < opts.polish_points; ++k) {
          double cand = center - radius +
                        2.0 * radius * static_cast<double>(k) /
                            static_cast<double>(opts.polish_points - 1);
          cand = std::clamp(cand, 0.0, 1.0);
          std::vector<double> trial = g;
          trial[static_cast<std::size_t>(e)] = cand;
          double ft = obj(trial);
          if (ft < f) {
            f = ft;
            g = std::move(trial);
          }
        }
      }
    }
    radius *= 0.25;
  }
  return f;
}

}  // namespace

KalikowReport kalikow_infimum(const PerturbationModel& model,
                              const TransitionKernel& base, double epsilon,
                              const KalikowOptions& opts) {
  if (epsilon > 0.0 && !(base.min_prob() - epsilon > 0.0))
    throw std::invalid_argument("kalikow_infimum: kappa = min p0 - eps must be > 0");

  KalikowObjective obj = kalikow_objective(model, base, epsilon);
  const int n = obj.n_dirs;

  KalikowReport rep;
  rep.lambda = 0.0;
  for (std::size_t a = 0; a < obj.weights.size(); ++a)
    rep.lambda += obj.weights[a] * obj.drift_e1[a];

  // Coarse scan: any probe with F < 0 settles the sign (scaling g -> c g
  // sends F to -infinity as c -> 0).
  auto note_negative = [&](const std::vector<double>& g, double f) {
    if (f < 0.0 && !rep.negative_witness) {
      rep.negative_witness = true;
      rep.witness_g = g;
    }
  };
  {
    const int levels = 4;  // {0.25, 0.5, 0.75, 1}
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    std::vector<double> g(static_cast<std::size_t>(n));
    std::int64_t total = 1;
    for (int e = 0; e < n; ++e) total *= levels;
    rep.grid_size = static_cast<int>(total);
    for (std::int64_t t = 0; t < total; ++t) {
      std::int64_t v = t;
      for (int e = 0; e < n; ++e) {
        g[static_cast<std::size_t>(e)] =
            0.25 * static_cast<double>(1 + v % levels);
        v /= levels;
      }
      double f = obj(g);
      note_negative(g, f);
      if (rep.negative_witness) break;
    }
  }
  if (rep.negative_witness) {
    rep.inf_value = -std::numeric_limits<double>::infinity();
    rep.criterion_holds = false;
    rep.argmin_g = rep.witness_g;
    return rep;
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_g;
  SplitMix64 rng(opts.seed);
  int iters = 0;
  for (int face = 0; face < n; ++face) {
    for (int start = 0; start < opts.multi_starts; ++start) {
      std::vector<double> g0(static_cast<std::size_t>(n), 1.0);
      if (start > 0)
        for (int e = 0; e < n; ++e)
          g0[static_cast<std::size_t>(e)] = 0.05 + 0.95 * rng.next_u01();
      std::vector<double> g_face;
      double f = minimize_on_face(obj, face, g0, opts, &g_face, &iters);
      note_negative(g_face, f);
      f = grid_polish(obj, face, g_face, opts);
      note_negative(g_face, f);
      if (f < best) {
        best = f;
        best_g = g_face;
      }
    }
  }
  rep.refinement_steps = iters;
  if (rep.negative_witness) {
    rep.inf_value = -std::numeric_limits<double>::infinity();
    rep.criterion_holds = false;
    rep.argmin_g = rep.witness_g;
    return rep;
  }
  rep.inf_value = best;
  rep.argmin_g = best_g;
  rep.criterion_holds = best > 0.0;
  return rep;
}

double lemma1_bound(const PerturbationModel& model, const TransitionKernel& base,
                    double epsilon) {
  double lambda = 0.0;
  KalikowObjective obj = kalikow_objective(model, base, epsilon);
  for (std::size_t a = 0; a < obj.weights.size(); ++a)
    lambda += obj.weights[a] * obj.drift_e1[a];
  double minp = base.min_prob();
  return (lambda - epsilon * epsilon * 2.0 / (minp * minp)) /
         static_cast<double>(num_directions(base.dim));
}

double polynomial_c0(int dim) {
  double a = (2.0 / 3.0) * std::pow(2.0, 3.0 * (dim - 1));
  double series = 0.0;
  for (int j = 1; j <= 64; ++j)
    series += std::log(static_cast<double>(j)) / std::ldexp(1.0, j);
  double b = std::exp(2.0 * (std::log(90.0) + series));
  return std::min(a, b);
}

const char* to_string(PolyVerdict v) {
  switch (v) {
    case PolyVerdict::holds_empirically:
      return "holds empirically";
    case PolyVerdict::fails:
      return "fails";
    default:
      return "inconclusive";
  }
}

PolyConditionReport poly_condition_test(const EnvironmentSpec& spec, const Vec& l,
                                        double L, double M, int n_runs,
                                        std::uint64_t max_steps,
                                        std::uint64_t env_seed,
                                        std::uint64_t walk_seed, int workers) {
  if (L < 2.0) throw std::invalid_argument("poly_condition_test: L must be >= 2");
  if (n_runs < 100) throw std::invalid_argument("poly_condition_test: need n_runs >= 100");

  SlabBox box = SlabBox::make(spec.base.dim, l, L);
  PolyConditionReport rep;
  rep.M = M;
  rep.L = L;
  rep.l = box.l;
  rep.n_runs = n_runs;
  rep.threshold = std::pow(L, -M);
  rep.c0 = polynomial_c0(spec.base.dim);
  rep.box_size_ok = L >= rep.c0;
  rep.env_seed = env_seed;
  rep.walk_seed = walk_seed;

  // 0 = front exit, 1 = back/side exit, 2 = censored.
  std::vector<std::uint8_t> outcome(static_cast<std::size_t>(n_runs));
  parallel_for(static_cast<std::size_t>(n_runs), workers, [&](std::size_t r) {
    EnvironmentField env = spec.realize(hash_combine(env_seed, r));
    WalkState w = make_walk(origin_point(), hash_combine(walk_seed, r));
    ExitResult res = run_until_exit(env, box, origin_point(), max_steps, w);
    outcome[r] = res.censored ? 2 : (res.front_exit ? 0 : 1);
  });
  for (std::uint8_t o : outcome) {
    if (o == 0)
      ++rep.front_exits;
    else if (o == 1)
      ++rep.failures;
    else
      ++rep.censored;
  }

  std::int64_t completed = rep.front_exits + rep.failures;
  rep.estimate = completed > 0
                     ? static_cast<double>(rep.failures) / static_cast<double>(completed)
                     : 0.0;
  Interval ci = wilson_ci(rep.failures, completed);
  rep.ci_lo = ci.lo;
  rep.ci_hi = ci.hi;

  double censored_frac = static_cast<double>(rep.censored) / static_cast<double>(n_runs);
  if (censored_frac > 0.01)
    rep.verdict = PolyVerdict::inconclusive;
  else if (rep.ci_hi < rep.threshold)
    rep.verdict = PolyVerdict::holds_empirically;
  else if (rep.ci_lo > rep.threshold)
    rep.verdict = PolyVerdict::fails;
  else
    rep.verdict = PolyVerdict::inconclusive;
  return rep;
}

}  // namespace rwre
