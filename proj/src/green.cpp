#include "rwre/green.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rwre {

namespace {

constexpr double kDriftTol = 1e-14;

// Dense distribution of X_k started at the origin, supported on the cube
// |y|_inf <= radius. Gather-form convolution; leaked mass accumulates.
class CubeDist {
 public:
  CubeDist(int dim, int radius)
      : dim_(dim), radius_(radius), side_(2 * radius + 1) {
    std::size_t n = 1;
    for (int i = 0; i < dim_; ++i) n *= static_cast<std::size_t>(side_);
    cur_.assign(n, 0.0);
    nxt_.assign(n, 0.0);
    stride_[0] = 1;
    for (int i = 1; i < dim_; ++i)
      stride_[static_cast<std::size_t>(i)] =
          stride_[static_cast<std::size_t>(i - 1)] * side_;
    std::size_t center = 0;
    for (int i = 0; i < dim_; ++i)
      center += static_cast<std::size_t>(radius_) *
                static_cast<std::size_t>(stride_[static_cast<std::size_t>(i)]);
    cur_[center] = 1.0;
    mass_ = 1.0;
  }

  int steps() const { return steps_; }
  double leaked_total() const { return leaked_; }

  double value(const Point& y) const {
    std::size_t idx = 0;
    for (int i = 0; i < dim_; ++i) {
      std::int64_t c = y[i] + radius_;
      if (c < 0 || c >= side_) return 0.0;
      idx += static_cast<std::size_t>(c) *
             static_cast<std::size_t>(stride_[static_cast<std::size_t>(i)]);
    }
    return cur_[idx];
  }

  const std::vector<double>& raw() const { return cur_; }

  void advance(const TransitionKernel& kernel) {
    if (dim_ == 2)
      advance2d(kernel);
    else
      advance_generic(kernel);
    cur_.swap(nxt_);
    ++steps_;
    double m = 0.0;
    for (double v : cur_) m += v;
    leaked_ += std::max(0.0, mass_ - m);
    mass_ = m;
  }

 private:
  void advance2d(const TransitionKernel& k) {
    const double pxp = k.probs[0], pxm = k.probs[1];
    const double pyp = k.probs[2], pym = k.probs[3];
    const int side = side_;
    for (int r = 0; r < side; ++r) {
      const double* row = cur_.data() + static_cast<std::size_t>(r) * side;
      const double* below = r > 0 ? row - side : nullptr;
      const double* above = r + 1 < side ? row + side : nullptr;
      double* out = nxt_.data() + static_cast<std::size_t>(r) * side;
      for (int c = 0; c < side; ++c) {
        double a = 0.0;
        if (c > 0) a += pxp * row[c - 1];         // arrived via +e1
        if (c + 1 < side) a += pxm * row[c + 1];  // arrived via -e1
        if (below) a += pyp * below[c];
        if (above) a += pym * above[c];
        out[c] = a;
      }
    }
  }

  void advance_generic(const TransitionKernel& k) {
    const int nd = num_directions(dim_);
    std::array<int, kMaxDim> coord{};
    const std::size_t n = cur_.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
      double a = 0.0;
      for (int e = 0; e < nd; ++e) {
        int ax = direction_axis(e);
        int sg = direction_sign(e);
        int c = coord[static_cast<std::size_t>(ax)] - sg;  // source cell
        if (c < 0 || c >= side_) continue;
        a += k.probs[static_cast<std::size_t>(e)] *
             cur_[idx - static_cast<std::size_t>(sg) *
                            static_cast<std::size_t>(
                                stride_[static_cast<std::size_t>(ax)])];
      }
      nxt_[idx] = a;
      for (int i = 0; i < dim_; ++i) {
        if (++coord[static_cast<std::size_t>(i)] < side_) break;
        coord[static_cast<std::size_t>(i)] = 0;
      }
    }
  }

  int dim_;
  int radius_;
  int side_;
  std::array<std::int64_t, kMaxDim> stride_{};
  std::vector<double> cur_, nxt_;
  double mass_ = 0.0;
  double leaked_ = 0.0;
  int steps_ = 0;
};

int max_linf(const std::vector<Point>& points, int dim) {
  std::int64_t r = 0;
  for (const Point& p : points) r = std::max(r, linf_norm(p, dim));
  return static_cast<int>(r);
}

// Three-point solve of A_j = J + alpha j h_j + beta h_j on h_j = 2^-j.
double richardson_triple(const std::array<int, 3>& js,
                         const std::array<double, 3>& as) {
  double m[3][4];
  for (int i = 0; i < 3; ++i) {
    double h = std::ldexp(1.0, -js[static_cast<std::size_t>(i)]);
    m[i][0] = 1.0;
    m[i][1] = static_cast<double>(js[static_cast<std::size_t>(i)]) * h;
    m[i][2] = h;
    m[i][3] = as[static_cast<std::size_t>(i)];
  }
  // Gaussian elimination, 3x3.
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    std::swap(m[piv], m[col]);
    for (int r = 0; r < 3; ++r) {
      if (r == col || m[col][col] == 0.0) continue;
      double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return m[0][3] / m[0][0];
}

}  // namespace

DecayRates compute_decay_rates(const TransitionKernel& kernel) {
  DecayRates r;
  Vec drift = local_drift(kernel);
  double dn = drift_norm(drift, kernel.dim);
  if (dn < kDriftTol) return r;
  r.has_drift = true;

  Vec u{};
  for (int i = 0; i < kernel.dim; ++i) u[i] = drift[i] / dn;

  auto phi = [&](double lam) {
    double s = 0.0;
    for (int e = 0; e < num_directions(kernel.dim); ++e) {
      double eu = direction_sign(e) * u[direction_axis(e)];
      s += kernel.probs[static_cast<std::size_t>(e)] * std::exp(-lam * eu);
    }
    return s;
  };

  // phi is convex with phi'(0) = -|drift| < 0; ternary search for the min.
  double lo = 0.0, hi = 60.0;
  for (int it = 0; it < 200; ++it) {
    double a = lo + (hi - lo) / 3.0, b = hi - (hi - lo) / 3.0;
    if (phi(a) < phi(b))
      hi = b;
    else
      lo = a;
  }
  r.lambda_hat = 0.5 * (lo + hi);
  r.rho_star = std::min(1.0, phi(r.lambda_hat));

  // Per-axis Lundberg rates: crossing against the drift of axis i costs
  // ln(max/min) per unit distance. Transverse axes borrow slack from the
  // most-drifted axis pair.
  double room = 0.0;
  double rate = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kernel.dim; ++i) {
    double up = kernel.probs[static_cast<std::size_t>(2 * i)];
    double dn_i = kernel.probs[static_cast<std::size_t>(2 * i + 1)];
    if (std::abs(up - dn_i) > kDriftTol) {
      rate = std::min(rate, std::abs(std::log(std::max(up, dn_i) /
                                              std::max(std::min(up, dn_i), 1e-300))));
      double slack = (std::sqrt(up) - std::sqrt(dn_i));
      room = std::max(room, slack * slack);
    }
  }
  for (int i = 0; i < kernel.dim; ++i) {
    double up = kernel.probs[static_cast<std::size_t>(2 * i)];
    double dn_i = kernel.probs[static_cast<std::size_t>(2 * i + 1)];
    if (std::abs(up - dn_i) <= kDriftTol) {
      double pax = up + dn_i;
      if (pax <= 0.0 || room <= 0.0) continue;
      rate = std::min(rate, std::acosh(1.0 + room / pax));
    }
  }
  r.rate_min = std::isfinite(rate) ? rate : 0.0;
  return r;
}

double NStepTable::p(int k, const Point& y) const {
  if (k < 0 || k > n_steps) throw std::out_of_range("NStepTable: step out of range");
  int side = 2 * radius + 1;
  std::size_t idx = 0, stride = 1;
  for (int i = 0; i < dim; ++i) {
    std::int64_t c = y[i] + radius;
    if (c < 0 || c >= side) return 0.0;
    idx += static_cast<std::size_t>(c) * stride;
    stride *= static_cast<std::size_t>(side);
  }
  return values[static_cast<std::size_t>(k)][idx];
}

NStepTable n_step_probs(const TransitionKernel& kernel, int n, int radius) {
  if (n < 0) throw std::invalid_argument("n_step_probs: n must be >= 0");
  if (radius < 1) throw std::invalid_argument("n_step_probs: radius must be >= 1");
  double cells = std::pow(2.0 * radius + 1.0, kernel.dim);
  if (cells * (n + 1.0) > 2e8)
    throw std::invalid_argument("n_step_probs: table too large; shrink n or radius");

  NStepTable t;
  t.dim = kernel.dim;
  t.radius = radius;
  t.n_steps = n;
  CubeDist dist(kernel.dim, radius);
  t.values.push_back(dist.raw());
  t.leaked_cum.push_back(0.0);
  for (int k = 1; k <= n; ++k) {
    dist.advance(kernel);
    t.values.push_back(dist.raw());
    t.leaked_cum.push_back(dist.leaked_total());
  }
  return t;
}

double GreenTable::at(const Point& x) const {
  auto it = values.find(x);
  if (it == values.end())
    throw std::out_of_range("GreenTable: point " + point_to_string(x, kernel.dim) +
                            " not tabulated");
  return it->second;
}

double JTable::at(const Point& x) const {
  auto it = values.find(x);
  if (it == values.end())
    throw std::out_of_range("JTable: point " + point_to_string(x, kernel.dim) +
                            " not tabulated");
  return it->second;
}

GreenTable green(const TransitionKernel& kernel, const std::vector<Point>& points,
                 double tol, const SeriesOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("green: tol must be positive");
  DecayRates rates = compute_decay_rates(kernel);
  if (!rates.has_drift && kernel.dim == 2)
    throw std::invalid_argument("green: recurrent kernel; Green function diverges");

  GreenTable table;
  table.kernel = kernel;
  table.tol = tol;

  int r_t = max_linf(points, kernel.dim);

  int n_terms = 0;
  int radius = 0;
  if (rates.has_drift) {
    // Chernoff: p_n(0,z) <= exp(lambda_hat z.u) rho*^n.
    Vec drift = local_drift(kernel);
    double dn = drift_norm(drift, kernel.dim);
    Vec u{};
    for (int i = 0; i < kernel.dim; ++i) u[i] = drift[i] / dn;
    double cmax = 1.0;
    for (const Point& p : points)
      cmax = std::max(cmax, std::exp(rates.lambda_hat * dot(negated(p), u, kernel.dim)));
    double log_rho = std::log(rates.rho_star);
    if (!(log_rho < 0.0)) {
      n_terms = opts.max_terms;
    } else {
      n_terms = static_cast<int>(std::ceil(
          (std::log(cmax * opts.safety) - std::log(tol * 0.5 * (1.0 - rates.rho_star))) /
          (-log_rho)));
    }
    n_terms = std::min(std::max(n_terms, r_t + 2), opts.max_terms);
    // Total leaked mass is at most 1; the margin only has to price the
    // exponential return cost back to the targets.
    int margin = opts.min_margin;
    if (rates.rate_min > 0.0)
      margin = std::max(margin,
                        static_cast<int>(std::ceil(
                            std::log(50.0 * opts.safety / tol) / rates.rate_min)));
    radius = std::min(r_t + margin, opts.max_radius);

    CubeDist dist(kernel.dim, radius);
    std::vector<double> acc(points.size(), 0.0);
    double g00 = 0.0;
    for (int k = 0;; ++k) {
      for (std::size_t i = 0; i < points.size(); ++i)
        acc[i] += dist.value(negated(points[i]));
      g00 += dist.value(origin_point());
      if (k == n_terms) break;
      dist.advance(kernel);
    }
    double tail = cmax * std::pow(rates.rho_star, n_terms + 1) /
                  std::max(1e-300, 1.0 - rates.rho_star);
    double leak_return =
        rates.rate_min > 0.0
            ? std::exp(-rates.rate_min * static_cast<double>(radius - r_t))
            : 1.0;
    table.truncation_bound =
        tail + dist.leaked_total() * leak_return * (2.0 * g00 + 2.0);
    table.bound_certified = rates.rate_min > 0.0;
    table.terms_used = n_terms;
    table.converged = table.truncation_bound <= tol;
    for (std::size_t i = 0; i < points.size(); ++i) table.values[points[i]] = acc[i];
    return table;
  }

  // Zero drift, d >= 3: transient but only polynomially summable. Pilot-fit
  // the return-probability decay, then budget terms against the tolerance.
  double half_d = 0.5 * kernel.dim;
  CubeDist pilot(kernel.dim, 24);
  double c_fit = 0.0;
  for (int k = 0; k < 200; ++k) {
    pilot.advance(kernel);
    if (k >= 160)
      c_fit = std::max(c_fit, pilot.value(origin_point()) *
                                  std::pow(static_cast<double>(k + 1), half_d));
  }
  double want =
      std::pow(c_fit * 2.0 / ((half_d - 1.0) * tol), 1.0 / (half_d - 1.0));
  n_terms = static_cast<int>(std::min(want, static_cast<double>(opts.max_terms)));
  n_terms = std::max(n_terms, 200);
  radius = r_t + static_cast<int>(std::ceil(2.8 * std::sqrt(static_cast<double>(n_terms))));
  if (radius > opts.max_radius) {
    radius = opts.max_radius;
    n_terms = std::min(
        n_terms, static_cast<int>(std::pow((radius - r_t) / 2.8, 2.0)));
  }
  {
    CubeDist dist(kernel.dim, radius);
    std::vector<double> acc(points.size(), 0.0);
    double last_ret = 0.0;
    for (int k = 0;; ++k) {
      for (std::size_t i = 0; i < points.size(); ++i)
        acc[i] += dist.value(negated(points[i]));
      double ret = dist.value(origin_point());
      last_ret = std::max(ret, last_ret * 0.5);  // smooth over parity
      if (k == n_terms) break;
      dist.advance(kernel);
    }
    double tail_est = last_ret * static_cast<double>(n_terms) / (half_d - 1.0) * 2.0;
    int margin = radius - r_t;
    double hit_factor =
        std::min(1.0, 2.0 / std::pow(std::max(1.0, static_cast<double>(margin)),
                                     kernel.dim - 2.0));
    table.truncation_bound = tail_est + dist.leaked_total() * hit_factor;
    table.bound_certified = false;
    table.terms_used = n_terms;
    table.converged = table.truncation_bound <= tol;
    for (std::size_t i = 0; i < points.size(); ++i) table.values[points[i]] = acc[i];
  }
  return table;
}

GreenTable absorbing_box_green(const TransitionKernel& kernel,
                               const std::vector<Point>& points, int radius) {
  int dim = kernel.dim;
  if (radius < 2) throw std::invalid_argument("absorbing_box_green: radius too small");
  int side = 2 * radius + 1;
  std::size_t n = 1;
  for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(side);
  if (n > 3'000'000) throw std::invalid_argument("absorbing_box_green: box too large");

  std::array<std::int64_t, kMaxDim> stride{};
  stride[0] = 1;
  for (int i = 1; i < dim; ++i)
    stride[static_cast<std::size_t>(i)] = stride[static_cast<std::size_t>(i - 1)] * side;

  auto cell_index = [&](const Point& p) -> std::int64_t {
    std::int64_t idx = 0;
    for (int i = 0; i < dim; ++i) {
      std::int64_t c = p[i] + radius;
      if (c < 0 || c >= side) return -1;
      idx += c * stride[static_cast<std::size_t>(i)];
    }
    return idx;
  };

  using Trip = Eigen::Triplet<double>;
  std::vector<Trip> trips;
  trips.reserve(n * static_cast<std::size_t>(num_directions(dim) + 1));
  std::array<int, kMaxDim> coord{};
  for (std::size_t idx = 0; idx < n; ++idx) {
    trips.emplace_back(static_cast<int>(idx), static_cast<int>(idx), 1.0);
    for (int e = 0; e < num_directions(dim); ++e) {
      int ax = direction_axis(e);
      int sg = direction_sign(e);
      int c = coord[static_cast<std::size_t>(ax)] + sg;
      if (c < 0 || c >= side) continue;  // absorbed outside
      std::int64_t nidx = static_cast<std::int64_t>(idx) +
                          sg * stride[static_cast<std::size_t>(ax)];
      trips.emplace_back(static_cast<int>(idx), static_cast<int>(nidx),
                         -kernel.probs[static_cast<std::size_t>(e)]);
    }
    for (int i = 0; i < dim; ++i) {
      if (++coord[static_cast<std::size_t>(i)] < side) break;
      coord[static_cast<std::size_t>(i)] = 0;
    }
  }

  Eigen::SparseMatrix<double> A(static_cast<int>(n), static_cast<int>(n));
  A.setFromTriplets(trips.begin(), trips.end());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<int>(n));
  rhs[static_cast<int>(cell_index(origin_point()))] = 1.0;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
  solver.compute(A);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("absorbing_box_green: factorization failed");
  Eigen::VectorXd g = solver.solve(rhs);

  GreenTable table;
  table.kernel = kernel;
  table.tol = 0.0;
  table.terms_used = radius;
  DecayRates rates = compute_decay_rates(kernel);
  int r_t = max_linf(points, kernel.dim);
  if (rates.has_drift && rates.rate_min > 0.0) {
    table.truncation_bound =
        2.0 * std::exp(-rates.rate_min * static_cast<double>(radius - r_t)) *
        (g[static_cast<int>(cell_index(origin_point()))] + 1.0);
    table.bound_certified = true;
  } else {
    table.truncation_bound =
        2.0 / std::pow(std::max(1.0, static_cast<double>(radius - r_t)),
                       std::max(1, kernel.dim - 2));
    table.bound_certified = false;
  }
  table.converged = true;
  for (const Point& p : points) {
    std::int64_t idx = cell_index(p);
    table.values[p] = idx >= 0 ? g[static_cast<int>(idx)] : 0.0;
  }
  return table;
}

JTable j_kernel(const TransitionKernel& kernel, const std::vector<Point>& points,
                double tol, const SeriesOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("j_kernel: tol must be positive");
  DecayRates rates = compute_decay_rates(kernel);
  if (!rates.has_drift && !kernel.symmetric())
    throw std::invalid_argument("j_kernel: kernel must be symmetric or transient");

  JTable table;
  table.kernel = kernel;
  table.tol = tol;

  int r_t = max_linf(points, kernel.dim);

  if (rates.has_drift) {
    table.method = "direct-sum";
    double log_rho = std::log(rates.rho_star);
    double cmax = 2.0;
    Vec drift = local_drift(kernel);
    double dn = drift_norm(drift, kernel.dim);
    Vec u{};
    for (int i = 0; i < kernel.dim; ++i) u[i] = drift[i] / dn;
    for (const Point& p : points)
      cmax = std::max(cmax, 2.0 * std::exp(rates.lambda_hat * dot(negated(p), u, kernel.dim)));
    int n_terms =
        log_rho < 0.0
            ? static_cast<int>(std::ceil(
                  (std::log(cmax * opts.safety) -
                   std::log(tol * 0.5 * (1.0 - rates.rho_star))) /
                  (-log_rho)))
            : opts.max_terms;
    n_terms = std::min(std::max(n_terms, r_t + 2), opts.max_terms);
    int margin = opts.min_margin;
    if (rates.rate_min > 0.0)
      margin = std::max(margin,
                        static_cast<int>(std::ceil(
                            std::log(50.0 * opts.safety / tol) / rates.rate_min)));
    int radius = std::min(r_t + margin, opts.max_radius);

    CubeDist dist(kernel.dim, radius);
    std::vector<double> acc(points.size(), 0.0);
    for (int k = 0;; ++k) {
      double p00 = dist.value(origin_point());
      for (std::size_t i = 0; i < points.size(); ++i)
        acc[i] += dist.value(negated(points[i])) - p00;
      if (k == n_terms) break;
      dist.advance(kernel);
    }
    double tail = cmax * std::pow(rates.rho_star, n_terms + 1) /
                  std::max(1e-300, 1.0 - rates.rho_star);
    table.terms_used = n_terms;
    table.stability_gap = tail;
    table.converged = tail <= tol;
    for (std::size_t i = 0; i < points.size(); ++i) {
      table.values[points[i]] =
          l1_norm(points[i], kernel.dim) == 0 ? 0.0 : acc[i];
    }
    return table;
  }

  // Symmetric kernel: Abel summation at s_j = 1 - 2^-j, then Richardson.
  table.method = "abel-richardson";
  int j_min = opts.abel_j_min, j_max = opts.abel_j_max;
  if (j_max - j_min < 2)
    throw std::invalid_argument("j_kernel: need at least 3 Abel levels");
  int n_max = static_cast<int>(std::ceil(opts.abel_term_factor * std::ldexp(1.0, j_max)));
  int radius = r_t + static_cast<int>(std::ceil(2.6 * std::sqrt(static_cast<double>(n_max))));
  while (radius > opts.max_radius && j_max > j_min + 2) {
    --j_max;
    n_max = static_cast<int>(std::ceil(opts.abel_term_factor * std::ldexp(1.0, j_max)));
    radius = r_t + static_cast<int>(std::ceil(2.6 * std::sqrt(static_cast<double>(n_max))));
  }
  int n_levels = j_max - j_min + 1;
  std::vector<double> s(static_cast<std::size_t>(n_levels));
  std::vector<double> weight(static_cast<std::size_t>(n_levels), 1.0);
  for (int v = 0; v < n_levels; ++v)
    s[static_cast<std::size_t>(v)] = 1.0 - std::ldexp(1.0, -(j_min + v));
  table.abel_s = s;

  std::vector<std::vector<double>> abel(
      points.size(), std::vector<double>(static_cast<std::size_t>(n_levels), 0.0));

  CubeDist dist(kernel.dim, radius);
  for (int k = 0; k <= n_max; ++k) {
    if (k > 0) dist.advance(kernel);
    if (k > 0)
      for (int v = 0; v < n_levels; ++v)
        weight[static_cast<std::size_t>(v)] *= s[static_cast<std::size_t>(v)];
    double p00 = dist.value(origin_point());
    for (std::size_t i = 0; i < points.size(); ++i) {
      double a_k = dist.value(negated(points[i])) - p00;
      if (a_k == 0.0) continue;
      for (int v = 0; v < n_levels; ++v)
        abel[i][static_cast<std::size_t>(v)] += weight[static_cast<std::size_t>(v)] * a_k;
    }
  }

  table.terms_used = n_max;
  double max_gap = 0.0;
  bool all_converged = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (l1_norm(points[i], kernel.dim) == 0) {
      table.values[points[i]] = 0.0;
      continue;
    }
    std::vector<double> ext;
    for (int v = 2; v < n_levels; ++v) {
      std::array<int, 3> js{j_min + v - 2, j_min + v - 1, j_min + v};
      std::array<double, 3> as{abel[i][static_cast<std::size_t>(v - 2)],
                               abel[i][static_cast<std::size_t>(v - 1)],
                               abel[i][static_cast<std::size_t>(v)]};
      ext.push_back(richardson_triple(js, as));
    }
    double gap = ext.size() >= 2
                     ? std::abs(ext[ext.size() - 1] - ext[ext.size() - 2])
                     : std::numeric_limits<double>::infinity();
    max_gap = std::max(max_gap, gap);
    if (gap > tol) all_converged = false;
    table.values[points[i]] = ext.back();
    table.extrapolants[points[i]] = std::move(ext);
  }
  table.stability_gap = max_gap;
  table.converged = all_converged;
  return table;
}

double srw2d_potential_kernel(const Point& x) {
  std::int64_t m64 = std::llabs(x[0]), n64 = std::llabs(x[1]);
  if (m64 < n64) std::swap(m64, n64);
  if (m64 > 128)
    throw std::invalid_argument("srw2d_potential_kernel: |x| too large for exact recurrence");
  int r = static_cast<int>(m64);
  int want_m = static_cast<int>(m64), want_n = static_cast<int>(n64);
  if (r == 0) return 0.0;

  const double four_over_pi = 4.0 / std::numbers::pi;
  // a[m][n] on the octant 0 <= n <= m <= r.
  std::vector<std::vector<double>> a(static_cast<std::size_t>(r + 1));
  for (int m = 0; m <= r; ++m)
    a[static_cast<std::size_t>(m)].assign(static_cast<std::size_t>(m + 1), 0.0);
  a[0][0] = 0.0;
  if (r >= 1) {
    a[1][0] = 1.0;
    a[1][1] = four_over_pi;
  }
  double diag = four_over_pi;
  for (int m = 1; m < r; ++m) {
    auto& col = a[static_cast<std::size_t>(m + 1)];
    auto& cur = a[static_cast<std::size_t>(m)];
    auto& prev = a[static_cast<std::size_t>(m - 1)];
    // a(m+1, m) from harmonicity at (m,m) with a(m, m+1) = a(m+1, m).
    col[static_cast<std::size_t>(m)] =
        2.0 * cur[static_cast<std::size_t>(m)] - cur[static_cast<std::size_t>(m - 1)];
    for (int n = m - 1; n >= 0; --n) {
      double south = n > 0 ? cur[static_cast<std::size_t>(n - 1)] : cur[1];
      double north = cur[static_cast<std::size_t>(n + 1)];
      double west = prev.size() > static_cast<std::size_t>(n)
                        ? prev[static_cast<std::size_t>(n)]
                        : a[static_cast<std::size_t>(m)][static_cast<std::size_t>(m - 1)];
      double delta = (m == 0 && n == 0) ? 4.0 : 0.0;
      col[static_cast<std::size_t>(n)] =
          4.0 * cur[static_cast<std::size_t>(n)] - west - north - south + delta;
    }
    // Exact closed diagonal a(k,k) = (4/pi) sum 1/(2j-1).
    diag += four_over_pi / static_cast<double>(2 * (m + 1) - 1);
    col[static_cast<std::size_t>(m + 1)] = diag;
  }
  return a[static_cast<std::size_t>(want_m)][static_cast<std::size_t>(want_n)];
}

}  // namespace rwre
