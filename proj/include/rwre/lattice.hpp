#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace rwre {

// Supported lattice dimensions are 2..kMaxDim. Points carry kMaxDim
// coordinates; entries at or beyond the active dimension stay zero.
inline constexpr int kMaxDim = 4;

using Point = std::array<std::int64_t, kMaxDim>;
using Vec = std::array<double, kMaxDim>;

// Directions enumerate V = {e in Z^d : |e|_1 = 1} in the canonical order
// (+e1, -e1, +e2, -e2, ...). Index 2i is +e_{i+1}, index 2i+1 is -e_{i+1}.
inline constexpr int num_directions(int dim) { return 2 * dim; }
inline constexpr int direction_axis(int dir) { return dir >> 1; }
inline constexpr int direction_sign(int dir) { return (dir & 1) ? -1 : +1; }
inline constexpr int opposite_direction(int dir) { return dir ^ 1; }

inline Point direction_vector(int dir) {
  Point e{};
  e[direction_axis(dir)] = direction_sign(dir);
  return e;
}

inline Point origin_point() { return Point{}; }

inline Point make_point(std::int64_t x0, std::int64_t x1, std::int64_t x2 = 0,
                        std::int64_t x3 = 0) {
  return Point{x0, x1, x2, x3};
}

inline Point moved(Point x, int dir) {
  x[direction_axis(dir)] += direction_sign(dir);
  return x;
}

inline Point add(Point a, const Point& b) {
  for (int i = 0; i < kMaxDim; ++i) a[i] += b[i];
  return a;
}

inline Point negated(Point a) {
  for (int i = 0; i < kMaxDim; ++i) a[i] = -a[i];
  return a;
}

inline std::int64_t l1_norm(const Point& x, int dim) {
  std::int64_t s = 0;
  for (int i = 0; i < dim; ++i) s += x[i] < 0 ? -x[i] : x[i];
  return s;
}

inline std::int64_t linf_norm(const Point& x, int dim) {
  std::int64_t s = 0;
  for (int i = 0; i < dim; ++i) s = std::max(s, x[i] < 0 ? -x[i] : x[i]);
  return s;
}

inline double dot(const Point& x, const Vec& v, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += static_cast<double>(x[i]) * v[i];
  return s;
}

inline std::string point_to_string(const Point& x, int dim) {
  std::string s = "(";
  for (int i = 0; i < dim; ++i) {
    if (i) s += ",";
    s += std::to_string(x[i]);
  }
  s += ")";
  return s;
}

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < kMaxDim; ++i) {
      std::uint64_t v = static_cast<std::uint64_t>(p[i]) + 0xbf58476d1ce4e5b9ull;
      v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
      v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
      h ^= (v ^ (v >> 31)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace rwre
