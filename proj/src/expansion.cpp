#include "rwre/expansion.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rwre {

namespace {

bool kernels_match(const TransitionKernel& a, const TransitionKernel& b) {
  if (a.dim != b.dim) return false;
  for (std::size_t i = 0; i < a.probs.size(); ++i)
    if (std::abs(a.probs[i] - b.probs[i]) > 1e-12) return false;
  return true;
}

}  // namespace

double DensityExpansion::evaluate_atoms(const std::vector<int>& atoms) const {
  if (atoms.size() != window.sites.size())
    throw std::invalid_argument("DensityExpansion: pattern arity mismatch");
  double s = 0.0;
  int n_dirs = num_directions(model.dim());
  for (std::size_t zi = 0; zi < atoms.size(); ++zi)
    for (int e = 0; e < n_dirs; ++e)
      s += model.centered(atoms[zi], e) * coeff[zi][static_cast<std::size_t>(e)];
  return 1.0 + epsilon * s;
}

double DensityExpansion::evaluate(std::uint64_t pattern_id,
                                  const PatternCodec& codec) const {
  return evaluate_atoms(codec.decode(pattern_id));
}

DensityExpansion first_order_density(const TransitionKernel& base, double epsilon,
                                     const PerturbationModel& model,
                                     const Window& window, const JTable& jtable) {
  if (window.sites.empty())
    throw std::invalid_argument("first_order_density: empty window");

  TransitionKernel annealed = base;
  {
    std::vector<double> probs = base.probs;
    for (int e = 0; e < num_directions(base.dim); ++e)
      probs[static_cast<std::size_t>(e)] +=
          epsilon * model.mean()[static_cast<std::size_t>(e)];
    annealed = TransitionKernel(base.dim, probs);
  }

  DensityExpansion ex(window, epsilon, model);
  ex.argument_convention = "reflected";
  if (kernels_match(jtable.kernel, annealed.reversed()))
    ex.kernel_form = "p*_eps";
  else if (kernels_match(jtable.kernel, base.reversed()))
    ex.kernel_form = "p*_0";
  else
    throw std::invalid_argument(
        "first_order_density: J table kernel is neither p*_eps nor p*_0 for this model");

  std::string missing;
  ex.coeff.resize(window.sites.size());
  for (std::size_t zi = 0; zi < window.sites.size(); ++zi) {
    ex.coeff[zi].assign(static_cast<std::size_t>(num_directions(base.dim)), 0.0);
    for (int e = 0; e < num_directions(base.dim); ++e) {
      Point target = negated(add(window.sites[zi], direction_vector(e)));
      if (!jtable.has(target)) {
        missing += (missing.empty() ? "" : ", ") + point_to_string(target, base.dim);
        continue;
      }
      ex.coeff[zi][static_cast<std::size_t>(e)] = jtable.at(target);
    }
  }
  if (!missing.empty())
    throw std::invalid_argument("first_order_density: J table missing required points: " +
                                missing);
  return ex;
}

DensityExpansion density_from_coefficients(
    const TransitionKernel& base, double epsilon, const PerturbationModel& model,
    const Window& window, const std::vector<double>& torus_j, std::int64_t L,
    bool reflect_argument) {
  TorusIndexer ix(base.dim, L);
  if (torus_j.size() != ix.n)
    throw std::invalid_argument("density_from_coefficients: coefficient size mismatch");
  DensityExpansion ex(window, epsilon, model);
  ex.kernel_form = "torus";
  ex.argument_convention = reflect_argument ? "reflected" : "forward";
  ex.coeff.resize(window.sites.size());
  for (std::size_t zi = 0; zi < window.sites.size(); ++zi) {
    ex.coeff[zi].assign(static_cast<std::size_t>(num_directions(base.dim)), 0.0);
    for (int e = 0; e < num_directions(base.dim); ++e) {
      Point t = add(window.sites[zi], direction_vector(e));
      if (reflect_argument) t = negated(t);
      Point w{};
      for (int i = 0; i < base.dim; ++i) w[i] = ((t[i] % L) + L) % L;
      ex.coeff[zi][static_cast<std::size_t>(e)] = torus_j[ix.index(w)];
    }
  }
  return ex;
}

double explicit_2d_density(const PerturbationModel& model, double epsilon,
                           const std::vector<int>& atoms) {
  if (model.dim() != 2)
    throw std::invalid_argument("explicit_2d_density: requires d = 2");
  if (atoms.size() != 2)
    throw std::invalid_argument("explicit_2d_density: pattern must cover {(0,0),(1,0)}");
  const double pi = std::numbers::pi;
  int a1 = atoms[1];  // atom at z1 = (1,0); z0's entries do not appear
  double xb_e1 = model.centered(a1, 0);
  double xb_me1 = model.centered(a1, 1);
  double xb_e2 = model.centered(a1, 2);
  return 1.0 - (4.0 / pi) * (xb_e1 + xb_me1) * epsilon +
         (8.0 / pi - 4.0) * xb_e2 * epsilon;
}

VelocityExpansion velocity_coefficients(const TransitionKernel& base,
                                        const PerturbationModel& model,
                                        double epsilon, const JTable& jtable) {
  VelocityExpansion v;
  v.epsilon = epsilon;
  v.argument_convention = "reflected";
  v.kernel_form = "p*_eps";
  v.d0 = local_drift(base);
  int n_dirs = num_directions(base.dim);
  for (int i = 0; i < base.dim; ++i)
    v.d1[i] = model.mean()[static_cast<std::size_t>(2 * i)] -
              model.mean()[static_cast<std::size_t>(2 * i + 1)];

  // p_2(e) = sum_e' C_{e,e'} K(e') with K(e') = J_{p*_eps}(-e').
  std::vector<double> p2(static_cast<std::size_t>(n_dirs), 0.0);
  for (int e = 0; e < n_dirs; ++e) {
    double s = 0.0;
    for (int f = 0; f < n_dirs; ++f) {
      Point target = negated(direction_vector(f));
      s += model.cov(e, f) * jtable.at(target);
    }
    p2[static_cast<std::size_t>(e)] = s;
  }
  for (int i = 0; i < base.dim; ++i)
    v.d2[i] = p2[static_cast<std::size_t>(2 * i)] - p2[static_cast<std::size_t>(2 * i + 1)];
  return v;
}

double TorusExpansion::reconstruction_residual(double epsilon, int m) const {
  if (m < 0 || m > order)
    throw std::invalid_argument("reconstruction_residual: order out of range");
  double worst = 0.0;
  for (std::size_t x = 0; x < exact_density.size(); ++x) {
    double approx = 0.0;
    double scale = 1.0;
    for (int i = 0; i <= m; ++i) {
      approx += scale * h[static_cast<std::size_t>(i)][x];
      scale *= epsilon;
    }
    worst = std::max(worst, std::abs(exact_density[x] - approx));
  }
  return worst;
}

TorusExpansion torus_expansion_terms(const EnvironmentField& env, int order) {
  if (!env.period())
    throw std::invalid_argument("torus_expansion_terms: environment must have a period");
  if (order < 0) throw std::invalid_argument("torus_expansion_terms: order must be >= 0");
  TorusIndexer ix(env.dim(), *env.period());
  const int n = static_cast<int>(ix.n);
  if (n > 20000)
    throw std::invalid_argument("torus_expansion_terms: torus too large for dense solve");

  const TransitionKernel p_eps = env.annealed_kernel();
  const PerturbationModel& model = env.model();
  const int n_dirs = num_directions(env.dim());

  // xi_bar(x, e) per site.
  std::vector<std::vector<double>> xi_bar(ix.n);
  for (std::size_t x = 0; x < ix.n; ++x) {
    int a = env.atom_at(ix.point(x));
    xi_bar[x].resize(static_cast<std::size_t>(n_dirs));
    for (int e = 0; e < n_dirs; ++e) xi_bar[x][static_cast<std::size_t>(e)] = model.centered(a, e);
  }

  // M = R0* - I with the first row replaced by the mean-zero pin; the
  // discarded stationarity row is redundant (rows of R0* - I sum to zero).
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (int y = 0; y < n; ++y) {
    M(y, y) -= 1.0;
    for (int e = 0; e < n_dirs; ++e) {
      // R0* g (y) = sum_e p_eps(e) g(y - e)
      int src = static_cast<int>(ix.neighbor(static_cast<std::size_t>(y),
                                             opposite_direction(e)));
      M(y, src) += p_eps(e);
    }
  }
  for (int c = 0; c < n; ++c) M(0, c) = 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);

  TorusExpansion out;
  out.order = order;
  out.h.assign(static_cast<std::size_t>(order + 1),
               std::vector<double>(ix.n, 0.0));
  for (std::size_t x = 0; x < ix.n; ++x) out.h[0][x] = 1.0;

  for (int i = 0; i < order; ++i) {
    // rhs = -A* h_i with A* g (y) = sum_e xi_bar(y-e, e) g(y-e).
    Eigen::VectorXd rhs(n);
    for (int y = 0; y < n; ++y) {
      double s = 0.0;
      for (int e = 0; e < n_dirs; ++e) {
        std::size_t src = ix.neighbor(static_cast<std::size_t>(y), opposite_direction(e));
        s += xi_bar[src][static_cast<std::size_t>(e)] * out.h[static_cast<std::size_t>(i)][src];
      }
      rhs(y) = -s;
    }
    rhs(0) = 0.0;  // pinned row: sum h_{i+1} = 0
    Eigen::VectorXd hi = lu.solve(rhs);
    double mean = hi.mean();
    for (std::size_t x = 0; x < ix.n; ++x)
      out.h[static_cast<std::size_t>(i + 1)][x] = hi(static_cast<int>(x)) - mean;
  }

  TorusOracle oracle = torus_solve(env, Window::pair_e1(env.dim()));
  out.stationary_residual = oracle.residual_inf;
  out.exact_density.resize(ix.n);
  for (std::size_t x = 0; x < ix.n; ++x)
    out.exact_density[x] = oracle.pi[x] * static_cast<double>(ix.n);
  return out;
}

}  // namespace rwre
