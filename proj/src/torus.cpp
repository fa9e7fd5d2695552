#include "rwre/torus.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace rwre {

TorusIndexer::TorusIndexer(int dim_, std::int64_t L_) : dim(dim_), L(L_) {
  if (dim < 2 || dim > kMaxDim) throw std::invalid_argument("TorusIndexer: bad dimension");
  if (L < 2) throw std::invalid_argument("TorusIndexer: period must be >= 2");
  n = 1;
  for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(L);
}

std::size_t TorusIndexer::index(const Point& w) const {
  std::size_t idx = 0;
  for (int i = dim - 1; i >= 0; --i)
    idx = idx * static_cast<std::size_t>(L) + static_cast<std::size_t>(w[i]);
  return idx;
}

Point TorusIndexer::point(std::size_t idx) const {
  Point p{};
  for (int i = 0; i < dim; ++i) {
    p[i] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(L));
    idx /= static_cast<std::size_t>(L);
  }
  return p;
}

std::size_t TorusIndexer::neighbor(std::size_t idx, int dir) const {
  Point p = point(idx);
  int ax = direction_axis(dir);
  p[ax] = (p[ax] + direction_sign(dir) + L) % L;
  return index(p);
}

namespace {

// pi P - pi in the infinity norm.
double stationarity_residual(const EnvironmentField& env, const TorusIndexer& ix,
                             const std::vector<double>& pi) {
  std::vector<double> flow(ix.n, 0.0);
  for (std::size_t x = 0; x < ix.n; ++x) {
    const TransitionKernel& k = env.site_kernel(ix.point(x));
    for (int e = 0; e < num_directions(env.dim()); ++e)
      flow[ix.neighbor(x, e)] += pi[x] * k(e);
  }
  double r = 0.0;
  for (std::size_t x = 0; x < ix.n; ++x) r = std::max(r, std::abs(flow[x] - pi[x]));
  return r;
}

std::vector<double> stationary_dense(const EnvironmentField& env,
                                     const TorusIndexer& ix) {
  const int n = static_cast<int>(ix.n);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  // Rows: stationarity P^T pi = pi; the last row carries normalization.
  for (int x = 0; x < n; ++x) {
    const TransitionKernel& k = env.site_kernel(ix.point(static_cast<std::size_t>(x)));
    for (int e = 0; e < num_directions(env.dim()); ++e) {
      int y = static_cast<int>(ix.neighbor(static_cast<std::size_t>(x), e));
      A(y, x) += k(e);
    }
    A(x, x) -= 1.0;
  }
  for (int x = 0; x < n; ++x) A(n - 1, x) = 1.0;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  Eigen::VectorXd pi = A.partialPivLu().solve(b);
  std::vector<double> out(ix.n);
  for (int x = 0; x < n; ++x) out[static_cast<std::size_t>(x)] = pi(x);
  return out;
}

std::vector<double> stationary_power(const EnvironmentField& env,
                                     const TorusIndexer& ix, int max_iters,
                                     double tol) {
  std::vector<double> pi(ix.n, 1.0 / static_cast<double>(ix.n));
  std::vector<double> nxt(ix.n, 0.0);
  for (int it = 0; it < max_iters; ++it) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    for (std::size_t x = 0; x < ix.n; ++x) {
      const TransitionKernel& k = env.site_kernel(ix.point(x));
      double half = 0.5 * pi[x];
      nxt[x] += half;  // lazy half-step sidesteps bipartite periodicity
      for (int e = 0; e < num_directions(env.dim()); ++e)
        nxt[ix.neighbor(x, e)] += half * k(e);
    }
    double diff = 0.0;
    for (std::size_t x = 0; x < ix.n; ++x) diff = std::max(diff, std::abs(nxt[x] - pi[x]));
    pi.swap(nxt);
    if (diff < tol * 0.5) break;
  }
  double sum = 0.0;
  for (double v : pi) sum += v;
  for (double& v : pi) v /= sum;
  return pi;
}

}  // namespace

std::vector<double> torus_stationary_power(const EnvironmentField& env,
                                           int max_iters, double tol) {
  if (!env.period()) throw std::invalid_argument("torus_stationary_power: need torus mode");
  TorusIndexer ix(env.dim(), *env.period());
  return stationary_power(env, ix, max_iters, tol);
}

TorusOracle torus_solve(const EnvironmentField& env, const Window& window,
                        const TorusSolveOptions& opts) {
  if (!env.period())
    throw std::invalid_argument("torus_solve: environment must have a period");
  TorusIndexer ix(env.dim(), *env.period());
  if (ix.n > opts.max_states)
    throw std::invalid_argument(
        "torus_solve: L^d = " + std::to_string(ix.n) +
        " exceeds the solver cap; use a smaller period L");

  TorusOracle oracle;
  oracle.dim = env.dim();
  oracle.period = *env.period();
  oracle.env_seed = env.seed();
  oracle.window = window;
  oracle.codec = PatternCodec(env.model().atom_count(),
                              static_cast<int>(window.sites.size()));

  oracle.pi = ix.n <= opts.dense_cap
                  ? stationary_dense(env, ix)
                  : stationary_power(env, ix, opts.power_max_iters, opts.residual_tol);
  oracle.residual_inf = stationarity_residual(env, ix, oracle.pi);

  for (int i = 0; i < env.dim(); ++i) oracle.exact_velocity[i] = 0.0;
  for (std::size_t x = 0; x < ix.n; ++x) {
    Vec d = local_drift(env.site_kernel(ix.point(x)));
    for (int i = 0; i < env.dim(); ++i) oracle.exact_velocity[i] += oracle.pi[x] * d[i];
  }

  oracle.window_pmf.assign(oracle.codec.n_patterns, 0.0);
  for (std::size_t x = 0; x < ix.n; ++x) {
    std::uint64_t id = pattern_at(env, ix.point(x), window, oracle.codec);
    oracle.window_pmf[id] += oracle.pi[x];
  }
  return oracle;
}

std::vector<double> torus_pseudo_green(const TransitionKernel& q, std::int64_t L) {
  TorusIndexer ix(q.dim, L);
  const int n = static_cast<int>(ix.n);
  if (n > 20000) throw std::invalid_argument("torus_pseudo_green: torus too large");

  // Row-vector equation D (I - Q) = delta_0 - uniform, pinned by sum D = 0.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    A(x, x) += 1.0;
    for (int e = 0; e < num_directions(q.dim); ++e) {
      int y = static_cast<int>(ix.neighbor(static_cast<std::size_t>(x), e));
      A(y, x) -= q(e);  // (I - Q)^T
    }
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(static_cast<int>(ix.index(origin_point()))) = 1.0;
  b.array() -= 1.0 / static_cast<double>(n);
  for (int x = 0; x < n; ++x) A(0, x) = 1.0;
  b(0) = 0.0;
  Eigen::VectorXd d = A.partialPivLu().solve(b);
  double mean = d.mean();
  std::vector<double> out(ix.n);
  for (int x = 0; x < n; ++x) out[static_cast<std::size_t>(x)] = d(x) - mean;
  return out;
}

std::vector<double> torus_j_values(const TransitionKernel& q, std::int64_t L) {
  TorusIndexer ix(q.dim, L);
  std::vector<double> D = torus_pseudo_green(q, L);
  double d0 = D[ix.index(origin_point())];
  std::vector<double> J(ix.n);
  for (std::size_t x = 0; x < ix.n; ++x) {
    Point p = ix.point(x);
    Point neg{};
    for (int i = 0; i < q.dim; ++i) neg[i] = (L - p[i]) % L;
    J[x] = D[ix.index(neg)] - d0;
  }
  return J;
}

}  // namespace rwre
