#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantorvort/dyadic.hpp"

namespace cantorvort {

inline constexpr int kDefaultMaxGeneration = 6;

/// Dyadic level of generation k: 0 for k = 0, 4^k otherwise (so l_k = 2^-level).
std::int64_t cantor_level(int k);
/// l_k as an exact dyadic.
DyadicScalar cantor_length(int k);

/// Half-open dyadic square [ix, ix+1) x [iy, iy+1) scaled by 2^-level.
struct DyadicCube {
  std::int64_t level = 0;
  BigInt ix = 0;
  BigInt iy = 0;

  static DyadicCube unit() { return {}; }
  /// Cube of the given level whose lower-left corner is (x, y); corner must lie on the grid.
  static DyadicCube at_corner(const DyadicScalar& x, const DyadicScalar& y, std::int64_t level);
  /// The level-`level` cube containing the point.
  static DyadicCube containing(const DyadicScalar& x, const DyadicScalar& y, std::int64_t level);

  DyadicScalar x() const { return DyadicScalar::grid(ix, level); }
  DyadicScalar y() const { return DyadicScalar::grid(iy, level); }
  DyadicScalar side() const { return DyadicScalar::pow2(-level); }
  /// |Q| = 4^-level.
  Rational area() const { return pow2_rational(-2 * level); }

  /// q in 0..3 = SW, SE, NW, NE.
  DyadicCube child(int q) const;
  DyadicCube parent() const;
  bool contains(const DyadicCube& other) const;
  bool contains(const DyadicScalar& px, const DyadicScalar& py) const;
  bool disjoint(const DyadicCube& other) const;
  /// Inside [0,1)^2.
  bool in_unit() const;

  std::string to_string() const;

  friend bool operator==(const DyadicCube& a, const DyadicCube& b) {
    return a.level == b.level && a.ix == b.ix && a.iy == b.iy;
  }
};

enum class Quadrant : std::uint8_t { SW = 0, SE = 1, NW = 2, NE = 3 };
const char* quadrant_name(Quadrant q);

struct CantorCube {
  int generation = 0;
  std::int64_t index = 1;  ///< 1-based position in address order
  std::vector<Quadrant> address;
  DyadicCube cube;
  DyadicScalar center_x;
  DyadicScalar center_y;

  std::string address_string() const;
};

/// Axis-aligned half-open square [x, x+side) x [y, y+side), not necessarily grid aligned.
struct ArbitraryCube {
  DyadicScalar x;
  DyadicScalar y;
  DyadicScalar side;
};

std::vector<CantorCube> cantor_generation(int k, int max_generation = kDefaultMaxGeneration);
/// Cube m (1-based) of generation k.
CantorCube cantor_cube(int k, std::int64_t m, int max_generation = kDefaultMaxGeneration);

/// j with l_{j+1} <= side < l_j; side = 1 gives 0.
int generation_bracket(const DyadicScalar& side);

struct IntersectionSearch {
  int max_count = 0;
  std::int64_t placements = 0;
  ArbitraryCube witness;
};

/// Largest number of closed E_j squares met by a cube of side < l_j, over seeded random
/// placements plus placements straddling every corner of E_j.
IntersectionSearch max_intersections(int j, int samples, std::uint64_t seed = 1);

/// Number of E_j squares (closed) meeting the half-open cube.
std::int64_t count_intersections(int j, const ArbitraryCube& q);

/// One-dimensional descent through the nested intervals I_0 ⊃ I_1 ⊃ ... ⊃ I_k.
namespace line {

/// Left endpoints of the 2^k intervals of I_k, increasing.
std::vector<DyadicScalar> corners(int k);
/// Number of midpoints of I_k intervals inside [lo, hi).
std::int64_t count_centers(int k, const DyadicScalar& lo, const DyadicScalar& hi);
/// Number of I_k intervals [a, a + l_k) contained in [lo, hi).
std::int64_t count_contained(int k, const DyadicScalar& lo, const DyadicScalar& hi);
/// Number of closed I_k intervals meeting [lo, hi).
std::int64_t count_meeting(int k, const DyadicScalar& lo, const DyadicScalar& hi);
/// Index (0-based, increasing order) of the I_k interval [a, a + l_k) holding t, if any.
std::optional<std::int64_t> locate(int k, const DyadicScalar& t);

}  // namespace line

}  // namespace cantorvort
