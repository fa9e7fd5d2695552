#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/walk.hpp"

namespace rwre {

// Kalikow objective F(g) = E[ d(0,omega).e1 / sum_e omega(0,e) g(e) ],
// evaluated exactly from the finite-support atoms. F is homogeneous of
// degree -1 in g, so the sign of the infimum over [0,1]^{2d} is decided on
// the faces max_e g(e) = 1.
struct KalikowObjective {
  int n_dirs = 0;
  std::vector<double> weights;       // per atom
  std::vector<double> drift_e1;      // d_a . e1 per atom
  std::vector<std::vector<double>> omega;  // per atom, per direction

  double operator()(const std::vector<double>& g) const;
};

KalikowObjective kalikow_objective(const PerturbationModel& model,
                                   const TransitionKernel& base, double epsilon);

struct KalikowOptions {
  int multi_starts = 5;
  int polish_points = 9;     // per-axis grid polish
  int polish_rounds = 4;
  double tol = 1e-8;
  int max_iters = 300;
  std::uint64_t seed = 0x6b616c696b6f77ull;
};

struct KalikowReport {
  double inf_value = 0.0;
  std::vector<double> argmin_g;
  double lambda = 0.0;  // E[d(0,omega) . e1]
  bool criterion_holds = false;
  bool negative_witness = false;  // F(g) < 0 seen: inf = -infinity by scaling
  std::vector<double> witness_g;
  int grid_size = 0;
  int refinement_steps = 0;
};

KalikowReport kalikow_infimum(const PerturbationModel& model,
                              const TransitionKernel& base, double epsilon,
                              const KalikowOptions& opts = {});

// (1/(2d)) (lambda - 2 eps^2 / min_e p0(e)^2), the closing bound of the
// Lemma's inequality chain.
double lemma1_bound(const PerturbationModel& model, const TransitionKernel& base,
                    double epsilon);

// c0 = (2/3) 2^{3(d-1)}  /\  exp{2 (ln 90 + sum_j ln j / 2^j)}.
double polynomial_c0(int dim);

enum class PolyVerdict { holds_empirically, fails, inconclusive };

struct PolyConditionReport {
  double M = 1.0;
  double L = 0.0;
  Vec l{};
  int n_runs = 0;
  std::int64_t failures = 0;   // back/side exits
  std::int64_t front_exits = 0;
  std::int64_t censored = 0;
  double estimate = 0.0;  // failure probability over completed runs
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  double threshold = 0.0;  // 1 / L^M
  double c0 = 0.0;
  bool box_size_ok = false;  // L >= c0
  PolyVerdict verdict = PolyVerdict::inconclusive;
  std::uint64_t env_seed = 0;
  std::uint64_t walk_seed = 0;
};

const char* to_string(PolyVerdict v);

// Monte Carlo test of (P)_M: fresh environment per run, annealed front-exit
// failure probability with a Wilson interval against 1/L^M.
PolyConditionReport poly_condition_test(const EnvironmentSpec& spec, const Vec& l,
                                        double L, double M, int n_runs,
                                        std::uint64_t max_steps,
                                        std::uint64_t env_seed,
                                        std::uint64_t walk_seed, int workers = 1);

}  // namespace rwre
