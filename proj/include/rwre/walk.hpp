#pragma once

#include <cstdint>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/lattice.hpp"
#include "rwre/rng.hpp"

namespace rwre {

struct WalkState {
  Point position{};
  std::uint64_t step = 0;
  SplitMix64 rng;
};

inline WalkState make_walk(const Point& start, std::uint64_t walk_seed) {
  WalkState s;
  s.position = start;
  s.step = 0;
  s.rng = SplitMix64(walk_seed);
  return s;
}

// One quenched transition: moves to a neighbor sampled from omega(position, .).
inline void step(const EnvironmentField& env, WalkState& state) {
  int dir = env.sample_direction(state.position, state.rng.next_u01());
  state.position = moved(state.position, dir);
  ++state.step;
}

// The rotated slab box B_{l,L}: longitudinal extent (-L, L) along l and
// transverse extent (-70 L^3, 70 L^3). Membership for axis directions is
// exact integer arithmetic; otherwise floating point with an interior margin.
struct SlabBox {
  int dim = 2;
  Vec l{};                      // unit direction
  double L = 0.0;               // longitudinal half-width
  double transverse_half = 0.0; // 70 L^3
  bool axis_aligned = false;
  int axis = 0;
  int axis_sign = +1;
  std::array<Vec, kMaxDim> rotation{};  // Householder H with H e1 = l; H = H^-1

  static SlabBox make(int dim, const Vec& direction, double L);

  double longitudinal(const Point& x) const;  // x . l
  bool contains(const Point& x) const;
  bool front_exit(const Point& x) const { return longitudinal(x) >= L; }
};

struct ExitResult {
  Point position{};
  std::uint64_t steps = 0;
  bool front_exit = false;
  bool censored = false;
};

// Simulates until the walk first leaves the box (or max_steps, flagged as
// censored -- never silently truncated).
ExitResult run_until_exit(const EnvironmentField& env, const SlabBox& box,
                          const Point& start, std::uint64_t max_steps,
                          WalkState& state);

struct KilledTrajectory {
  std::vector<Point> path;  // X_0 .. X_tau
  double delta = 0.0;
  std::uint64_t tau = 0;
};

// Samples tau ~ Geometric(1 - delta) on {0,1,2,...} independent of walk and
// environment, then runs tau steps.
KilledTrajectory killed_run(const EnvironmentField& env, double delta,
                            const Point& start, WalkState& state);

// A finite observation window B, with patterns over it encoded as tuples of
// atom indices in the order the sites are listed (row-major by convention).
struct Window {
  int dim = 2;
  std::vector<Point> sites;

  static Window pair_e1(int dim);  // {origin, origin + e1}
};

// Packs atom-index tuples over a window into dense ids in [0, n_atoms^|B|).
struct PatternCodec {
  int n_atoms = 1;
  int n_sites = 0;
  std::uint64_t n_patterns = 1;

  PatternCodec() = default;
  PatternCodec(int n_atoms_, int n_sites_);

  std::uint64_t encode(const std::vector<int>& atoms) const;
  std::vector<int> decode(std::uint64_t id) const;
};

// Atom-index tuple id of the pattern {omega(x + z, .) : z in B}.
std::uint64_t pattern_at(const EnvironmentField& env, const Point& x,
                         const Window& window, const PatternCodec& codec);

// Probability of a pattern under the product law P_B.
double pattern_p_mass(const PerturbationModel& model, const PatternCodec& codec,
                      std::uint64_t id);

// The environmental process restricted to a window: for each step k <= n the
// pattern of (t_{X_k} omega) on B, as codec ids.
std::vector<std::uint64_t> environmental_trajectory(const EnvironmentField& env,
                                                    const Point& start,
                                                    std::uint64_t n,
                                                    const Window& window,
                                                    WalkState& state);

}  // namespace rwre
