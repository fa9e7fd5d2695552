#include "rwre/walk.hpp"

#include <cmath>
#include <stdexcept>

namespace rwre {

namespace {
constexpr double kOrthoTol = 1e-12;
constexpr double kInteriorMargin = 1e-9;
}  // namespace

SlabBox SlabBox::make(int dim, const Vec& direction, double L) {
  if (dim < 2 || dim > kMaxDim) throw std::invalid_argument("SlabBox: bad dimension");
  if (!(L > 0.0)) throw std::invalid_argument("SlabBox: L must be positive");

  SlabBox box;
  box.dim = dim;
  box.L = L;
  box.transverse_half = 70.0 * L * L * L;

  double norm = 0.0;
  for (int i = 0; i < dim; ++i) norm += direction[i] * direction[i];
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) throw std::invalid_argument("SlabBox: zero direction");
  for (int i = 0; i < dim; ++i) box.l[i] = direction[i] / norm;

  // Axis case: all mass on one coordinate.
  for (int i = 0; i < dim; ++i) {
    if (std::abs(std::abs(box.l[i]) - 1.0) < kOrthoTol) {
      box.axis_aligned = true;
      box.axis = i;
      box.axis_sign = box.l[i] > 0 ? +1 : -1;
    }
  }

  // Householder reflection H = I - 2 v v^T / (v.v) with v = l - e1 maps e1
  // to l and is its own inverse. Falls back to the identity when l == e1.
  Vec v{};
  double vv = 0.0;
  for (int i = 0; i < dim; ++i) {
    v[i] = box.l[i] - (i == 0 ? 1.0 : 0.0);
    vv += v[i] * v[i];
  }
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      double id = (r == c) ? 1.0 : 0.0;
      box.rotation[static_cast<std::size_t>(r)][c] =
          vv < kOrthoTol ? id : id - 2.0 * v[r] * v[c] / vv;
    }
  }
  return box;
}

double SlabBox::longitudinal(const Point& x) const {
  if (axis_aligned) return static_cast<double>(axis_sign * x[axis]);
  return dot(x, l, dim);
}

bool SlabBox::contains(const Point& x) const {
  if (axis_aligned) {
    double lon = static_cast<double>(axis_sign * x[axis]);
    if (!(lon > -L && lon < L)) return false;
    for (int i = 0; i < dim; ++i) {
      if (i == axis) continue;
      if (!(std::llabs(x[i]) < transverse_half)) return false;
    }
    return true;
  }
  // Transformed coordinates y = H x; y[0] = x . l.
  for (int r = 0; r < dim; ++r) {
    double y = 0.0;
    for (int c = 0; c < dim; ++c)
      y += rotation[static_cast<std::size_t>(r)][c] * static_cast<double>(x[c]);
    double half = (r == 0) ? L : transverse_half;
    if (!(y > -half + kInteriorMargin && y < half - kInteriorMargin)) return false;
  }
  return true;
}

ExitResult run_until_exit(const EnvironmentField& env, const SlabBox& box,
                          const Point& start, std::uint64_t max_steps,
                          WalkState& state) {
  if (!box.contains(start))
    throw std::invalid_argument("run_until_exit: start must lie inside the box");
  state.position = start;
  std::uint64_t taken = 0;
  while (taken < max_steps) {
    step(env, state);
    ++taken;
    if (!box.contains(state.position)) {
      return ExitResult{state.position, taken, box.front_exit(state.position), false};
    }
  }
  return ExitResult{state.position, taken, false, true};
}

KilledTrajectory killed_run(const EnvironmentField& env, double delta,
                            const Point& start, WalkState& state) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("killed_run: delta must lie in (0,1)");

  // tau = floor(log u / log delta) gives P(tau >= k) = delta^k.
  double u = state.rng.next_u01();
  if (u <= 0.0) u = 0x1.0p-53;
  std::uint64_t tau =
      static_cast<std::uint64_t>(std::floor(std::log(u) / std::log(delta)));

  KilledTrajectory traj;
  traj.delta = delta;
  traj.tau = tau;
  traj.path.reserve(tau + 1);
  state.position = start;
  traj.path.push_back(start);
  for (std::uint64_t k = 0; k < tau; ++k) {
    step(env, state);
    traj.path.push_back(state.position);
  }
  return traj;
}

Window Window::pair_e1(int dim) {
  Window w;
  w.dim = dim;
  w.sites = {origin_point(), moved(origin_point(), 0)};
  return w;
}

PatternCodec::PatternCodec(int n_atoms_, int n_sites_)
    : n_atoms(n_atoms_), n_sites(n_sites_) {
  if (n_atoms < 1 || n_sites < 1)
    throw std::invalid_argument("PatternCodec: empty window or atom set");
  n_patterns = 1;
  for (int i = 0; i < n_sites; ++i) {
    if (n_patterns > (1ull << 62) / static_cast<std::uint64_t>(n_atoms))
      throw std::invalid_argument("PatternCodec: pattern space exceeds 2^62");
    n_patterns *= static_cast<std::uint64_t>(n_atoms);
  }
}

std::uint64_t PatternCodec::encode(const std::vector<int>& atoms) const {
  std::uint64_t id = 0;
  for (int i = 0; i < n_sites; ++i)
    id = id * static_cast<std::uint64_t>(n_atoms) +
         static_cast<std::uint64_t>(atoms[static_cast<std::size_t>(i)]);
  return id;
}

std::vector<int> PatternCodec::decode(std::uint64_t id) const {
  std::vector<int> atoms(static_cast<std::size_t>(n_sites));
  for (int i = n_sites - 1; i >= 0; --i) {
    atoms[static_cast<std::size_t>(i)] =
        static_cast<int>(id % static_cast<std::uint64_t>(n_atoms));
    id /= static_cast<std::uint64_t>(n_atoms);
  }
  return atoms;
}

std::uint64_t pattern_at(const EnvironmentField& env, const Point& x,
                         const Window& window, const PatternCodec& codec) {
  std::uint64_t id = 0;
  for (const Point& z : window.sites)
    id = id * static_cast<std::uint64_t>(codec.n_atoms) +
         static_cast<std::uint64_t>(env.atom_at(add(x, z)));
  return id;
}

double pattern_p_mass(const PerturbationModel& model, const PatternCodec& codec,
                      std::uint64_t id) {
  double mass = 1.0;
  for (int atom : codec.decode(id)) mass *= model.atom(atom).weight;
  return mass;
}

std::vector<std::uint64_t> environmental_trajectory(const EnvironmentField& env,
                                                    const Point& start,
                                                    std::uint64_t n,
                                                    const Window& window,
                                                    WalkState& state) {
  PatternCodec codec(env.model().atom_count(), static_cast<int>(window.sites.size()));
  std::vector<std::uint64_t> patterns;
  patterns.reserve(n + 1);
  state.position = start;
  patterns.push_back(pattern_at(env, state.position, window, codec));
  for (std::uint64_t k = 0; k < n; ++k) {
    step(env, state);
    patterns.push_back(pattern_at(env, state.position, window, codec));
  }
  return patterns;
}

}  // namespace rwre
