#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "rwre/kernel.hpp"
#include "rwre/lattice.hpp"

namespace rwre {

// n-step transition probabilities p_k(0, y) on the cube |y|_inf <= radius,
// computed by exact dynamic-programming convolution. Mass leaving the cube
// is tracked per step; tabulated mass + leaked mass = 1.
struct NStepTable {
  int dim = 0;
  int radius = 0;
  int n_steps = 0;
  std::vector<std::vector<double>> values;  // [k][cube cell]
  std::vector<double> leaked_cum;           // cumulative leaked mass after step k

  double p(int k, const Point& y) const;
  double leaked_mass(int k) const { return leaked_cum[static_cast<std::size_t>(k)]; }
};

NStepTable n_step_probs(const TransitionKernel& kernel, int n, int radius);

struct SeriesOptions {
  int max_terms = 200000;
  int max_radius = 420;
  int min_margin = 24;
  double safety = 10.0;
  int abel_j_min = 5;
  int abel_j_max = 9;
  double abel_term_factor = 10.0;  // terms per level: factor / (1 - s_j)
};

// Green function table G(x, 0) = sum_n p_n(x, 0) for a homogeneous kernel.
struct GreenTable {
  TransitionKernel kernel;
  double tol = 0.0;
  int terms_used = 0;
  double truncation_bound = 0.0;
  bool bound_certified = false;  // true when backed by Chernoff/Lundberg rates
  bool converged = false;
  std::unordered_map<Point, double, PointHash> values;

  double at(const Point& x) const;
  bool has(const Point& x) const { return values.count(x) > 0; }
};

// Requires a transient kernel: d >= 3, or nonzero drift in any dimension.
// Throws for zero-drift kernels in d = 2 (recurrent; the Green function
// diverges).
GreenTable green(const TransitionKernel& kernel, const std::vector<Point>& points,
                 double tol, const SeriesOptions& opts = {});

// Independent oracle: absorbing linear solve of (I - P) g = delta_0 on the
// cube |x|_inf <= radius, exterior absorbing. The oracle of record when the
// series and the solve disagree.
GreenTable absorbing_box_green(const TransitionKernel& kernel,
                               const std::vector<Point>& points, int radius);

// J_p(x) = lim_n sum_{k<=n} (p_k(0,-x) - p_k(0,0)).
struct JTable {
  TransitionKernel kernel;
  double tol = 0.0;
  std::string method;  // "direct-sum" or "abel-richardson"
  int terms_used = 0;
  bool converged = false;
  double stability_gap = 0.0;  // max over points of the last extrapolant change
  std::vector<double> abel_s;  // Abel grid used (empty for direct sums)
  std::unordered_map<Point, double, PointHash> values;
  std::unordered_map<Point, std::vector<double>, PointHash> extrapolants;

  double at(const Point& x) const;
  bool has(const Point& x) const { return values.count(x) > 0; }
};

// Symmetric kernels go through Abel summation on s = 1 - 2^-j with
// three-point Richardson extrapolation on the h log(1/h) + h error model;
// drifted kernels use plain partial sums with a geometric tail bound.
JTable j_kernel(const TransitionKernel& kernel, const std::vector<Point>& points,
                double tol, const SeriesOptions& opts = {});

// Classical potential kernel a(x) of the 2D simple random walk, from the
// closed diagonal values a(n,n) = (4/pi) sum_{j<=n} 1/(2j-1) and the
// harmonic recurrence a(x) = (1/4) sum_e a(x+e) - delta_{x,0}.
double srw2d_potential_kernel(const Point& x);

// Exponential decay rates of a drifted kernel used for certified tails.
struct DecayRates {
  bool has_drift = false;
  double rho_star = 1.0;    // min_l sum_e p(e) exp(-l e.u), u = drift direction
  double lambda_hat = 0.0;  // argmin
  double rate_min = 0.0;    // slowest certified return rate across cube faces
};

DecayRates compute_decay_rates(const TransitionKernel& kernel);

}  // namespace rwre
