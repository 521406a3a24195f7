#include "cantorvort/cantor.hpp"

#include <random>
#include <sstream>

#include "cantorvort/errors.hpp"

namespace cantorvort {

std::int64_t cantor_level(int k) {
  if (k < 0) throw DomainError("negative generation");
  if (k == 0) return 0;
  if (k > 30) throw ResourceLimitError("generation " + std::to_string(k) + " is beyond any exponent range");
  return std::int64_t{1} << (2 * k);
}

DyadicScalar cantor_length(int k) { return DyadicScalar::pow2(-cantor_level(k)); }

// ---------------------------------------------------------------------------
// DyadicCube

DyadicCube DyadicCube::at_corner(const DyadicScalar& x, const DyadicScalar& y, std::int64_t level) {
  return {level, x.to_grid(level), y.to_grid(level)};
}

DyadicCube DyadicCube::containing(const DyadicScalar& x, const DyadicScalar& y, std::int64_t level) {
  return {level, x.floor_grid(level), y.floor_grid(level)};
}

DyadicCube DyadicCube::child(int q) const {
  DyadicCube c{level + 1, ix << 1, iy << 1};
  if (q & 1) c.ix += 1;
  if (q & 2) c.iy += 1;
  return c;
}

DyadicCube DyadicCube::parent() const {
  if (level == 0) throw DomainError("unit cube has no parent");
  DyadicCube p{level - 1, ix, iy};
  mpz_fdiv_q_2exp(p.ix.get_mpz_t(), ix.get_mpz_t(), 1);
  mpz_fdiv_q_2exp(p.iy.get_mpz_t(), iy.get_mpz_t(), 1);
  return p;
}

bool DyadicCube::contains(const DyadicCube& other) const {
  if (other.level < level) return false;
  const auto shift = static_cast<mp_bitcnt_t>(other.level - level);
  BigInt ox;
  BigInt oy;
  mpz_fdiv_q_2exp(ox.get_mpz_t(), other.ix.get_mpz_t(), shift);
  mpz_fdiv_q_2exp(oy.get_mpz_t(), other.iy.get_mpz_t(), shift);
  return ox == ix && oy == iy;
}

bool DyadicCube::contains(const DyadicScalar& px, const DyadicScalar& py) const {
  return px.floor_grid(level) == ix && py.floor_grid(level) == iy;
}

bool DyadicCube::disjoint(const DyadicCube& other) const { return !contains(other) && !other.contains(*this); }

bool DyadicCube::in_unit() const {
  const BigInt n = pow2_int(level);
  return sgn(ix) >= 0 && sgn(iy) >= 0 && ix < n && iy < n;
}

std::string DyadicCube::to_string() const {
  std::ostringstream os;
  os << "level " << level << " corner (" << x().to_string() << ", " << y().to_string() << ")";
  return os.str();
}

const char* quadrant_name(Quadrant q) {
  switch (q) {
    case Quadrant::SW: return "SW";
    case Quadrant::SE: return "SE";
    case Quadrant::NW: return "NW";
    case Quadrant::NE: return "NE";
  }
  return "?";
}

std::string CantorCube::address_string() const {
  std::string s;
  for (std::size_t i = 0; i < address.size(); ++i) {
    if (i) s += ".";
    s += quadrant_name(address[i]);
  }
  return s.empty() ? "root" : s;
}

// ---------------------------------------------------------------------------
// 1D descent

namespace line {
namespace {

// Grid index, at level lev(k), of the left endpoint reached by the bit path.
BigInt corner_index(int k, std::int64_t path) {
  const std::int64_t top = cantor_level(k);
  BigInt a = 0;
  for (int j = 1; j <= k; ++j) {
    if ((path >> (k - j)) & 1) a += pow2_int(top - cantor_level(j - 1)) - pow2_int(top - cantor_level(j));
  }
  return a;
}

enum class Cover { None, All, Partial };

// Walks the interval tree down to generation k, summing leaf hits; `classify` sees each
// node [a, a + l_j] and may settle the whole subtree.
template <class Classify, class Leaf>
std::int64_t descend(int k, int j, const DyadicScalar& a, Classify& classify, Leaf& leaf) {
  if (j == k) return leaf(a) ? 1 : 0;
  const Cover c = classify(j, a);
  if (c == Cover::None) return 0;
  if (c == Cover::All) return std::int64_t{1} << (k - j);
  const DyadicScalar right = a + cantor_length(j) - cantor_length(j + 1);
  return descend(k, j + 1, a, classify, leaf) + descend(k, j + 1, right, classify, leaf);
}

void check_k(int k) {
  if (k < 0 || k > 30) throw DomainError("generation out of range: " + std::to_string(k));
}

}  // namespace

std::vector<DyadicScalar> corners(int k) {
  check_k(k);
  if (k > 20) throw ResourceLimitError("too many intervals to list");
  std::vector<DyadicScalar> out;
  out.reserve(std::size_t{1} << k);
  const std::int64_t top = cantor_level(k);
  for (std::int64_t p = 0; p < (std::int64_t{1} << k); ++p) out.push_back(DyadicScalar::grid(corner_index(k, p), top));
  return out;
}

std::int64_t count_centers(int k, const DyadicScalar& lo, const DyadicScalar& hi) {
  check_k(k);
  const DyadicScalar half = DyadicScalar::pow2(-cantor_level(k) - 1);
  auto classify = [&](int j, const DyadicScalar& a) {
    const DyadicScalar b = a + cantor_length(j);
    if (a >= hi || b <= lo) return Cover::None;
    if (lo <= a && b <= hi) return Cover::All;
    return Cover::Partial;
  };
  auto leaf = [&](const DyadicScalar& a) {
    const DyadicScalar c = a + half;
    return lo <= c && c < hi;
  };
  return descend(k, 0, DyadicScalar(0), classify, leaf);
}

std::int64_t count_contained(int k, const DyadicScalar& lo, const DyadicScalar& hi) {
  check_k(k);
  const DyadicScalar lk = cantor_length(k);
  auto classify = [&](int j, const DyadicScalar& a) {
    const DyadicScalar b = a + cantor_length(j);
    if (a >= hi || b <= lo) return Cover::None;
    if (lo <= a && b <= hi) return Cover::All;
    return Cover::Partial;
  };
  auto leaf = [&](const DyadicScalar& a) { return lo <= a && a + lk <= hi; };
  return descend(k, 0, DyadicScalar(0), classify, leaf);
}

std::int64_t count_meeting(int k, const DyadicScalar& lo, const DyadicScalar& hi) {
  check_k(k);
  if (hi <= lo) return 0;
  const DyadicScalar lk = cantor_length(k);
  // Closed [a, b] meets [lo, hi) iff a < hi and b >= lo.
  auto classify = [&](int j, const DyadicScalar& a) {
    const DyadicScalar b = a + cantor_length(j);
    if (a >= hi || b < lo) return Cover::None;
    return Cover::Partial;
  };
  auto leaf = [&](const DyadicScalar& a) { return a < hi && a + lk >= lo; };
  return descend(k, 0, DyadicScalar(0), classify, leaf);
}

std::optional<std::int64_t> locate(int k, const DyadicScalar& t) {
  check_k(k);
  DyadicScalar a(0);
  std::int64_t index = 0;
  if (t < a || t >= DyadicScalar(1)) return std::nullopt;
  for (int j = 0; j < k; ++j) {
    const DyadicScalar next = cantor_length(j + 1);
    const DyadicScalar right = a + cantor_length(j) - next;
    index <<= 1;
    if (t < a + next) continue;
    if (t >= right) {
      a = right;
      index |= 1;
      continue;
    }
    return std::nullopt;
  }
  return index;
}

}  // namespace line

// ---------------------------------------------------------------------------
// Generations

namespace {

void check_generation(int k, int max_generation) {
  if (k < 0) throw DomainError("negative generation");
  if (k > max_generation) {
    throw ResourceLimitError("generation " + std::to_string(k) + " exceeds the configured maximum " +
                             std::to_string(max_generation));
  }
}

CantorCube build_cube(int k, std::int64_t zero_based) {
  CantorCube c;
  c.generation = k;
  c.index = zero_based + 1;
  std::int64_t px = 0;
  std::int64_t py = 0;
  for (int j = 1; j <= k; ++j) {
    const auto q = static_cast<int>((zero_based >> (2 * (k - j))) & 3);
    c.address.push_back(static_cast<Quadrant>(q));
    px = (px << 1) | (q & 1);
    py = (py << 1) | (q >> 1);
  }
  const std::int64_t level = cantor_level(k);
  c.cube = {level, line::corner_index(k, px), line::corner_index(k, py)};
  const DyadicScalar half = DyadicScalar::pow2(-level - 1);
  c.center_x = c.cube.x() + half;
  c.center_y = c.cube.y() + half;
  return c;
}

}  // namespace

std::vector<CantorCube> cantor_generation(int k, int max_generation) {
  check_generation(k, max_generation);
  const std::int64_t n = std::int64_t{1} << (2 * k);
  std::vector<CantorCube> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) out.push_back(build_cube(k, i));
  return out;
}

CantorCube cantor_cube(int k, std::int64_t m, int max_generation) {
  check_generation(k, max_generation);
  const std::int64_t n = std::int64_t{1} << (2 * k);
  if (m < 1 || m > n) throw DomainError("cube index " + std::to_string(m) + " outside 1.." + std::to_string(n));
  return build_cube(k, m - 1);
}

int generation_bracket(const DyadicScalar& side) {
  if (side.sign() <= 0) throw DomainError("side must be positive");
  if (side > DyadicScalar(1)) throw DomainError("side exceeds 1");
  if (side == DyadicScalar(1)) return 0;
  // side in [2^e, 2^(e+1)); l_{j+1} <= side < l_j  <=>  lev(j) < -e <= lev(j+1)
  const std::int64_t minus_e = -floor_log2(side.to_rational());
  for (int j = 0;; ++j) {
    if (cantor_level(j) < minus_e && minus_e <= cantor_level(j + 1)) return j;
  }
}

std::int64_t count_intersections(int j, const ArbitraryCube& q) {
  const std::int64_t nx = line::count_meeting(j, q.x, q.x + q.side);
  if (nx == 0) return 0;
  return nx * line::count_meeting(j, q.y, q.y + q.side);
}

IntersectionSearch max_intersections(int j, int samples, std::uint64_t seed) {
  if (j < 0 || j > kDefaultMaxGeneration) throw DomainError("generation out of range");
  IntersectionSearch best;
  const std::int64_t lev = cantor_level(j);
  const std::int64_t fine = lev + 8;  // placement grid
  auto consider = [&](const ArbitraryCube& q) {
    ++best.placements;
    const auto n = count_intersections(j, q);
    if (n > best.max_count) {
      best.max_count = static_cast<int>(n);
      best.witness = q;
    }
  };

  // Straddle every corner of E_j with the largest admissible side, in all offsets
  // that put the corner inside, on the edge of, or just outside the cube.
  const DyadicScalar s = cantor_length(j) - DyadicScalar::pow2(-fine);
  const DyadicScalar eps = DyadicScalar::pow2(-fine);
  std::vector<DyadicScalar> ends;
  if (j <= 4) {
    for (const auto& a : line::corners(j)) {
      ends.push_back(a);
      ends.push_back(a + cantor_length(j));
    }
  }
  const std::vector<DyadicScalar> offsets = {DyadicScalar(0), eps, s - eps, s, s + eps,
                                             DyadicScalar::grid(1, 1) * s};
  for (const auto& px : ends) {
    for (const auto& py : ends) {
      for (const auto& ox : offsets) {
        for (const auto& oy : offsets) consider({px - ox, py - oy, s});
      }
    }
  }

  // Seeded random placements: dyadic sides in (0, l_j), dyadic corners in [0, 1 - side].
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    const std::int64_t side_level = lev + 1 + static_cast<std::int64_t>(rng() % 8);
    const DyadicScalar side = DyadicScalar::pow2(-side_level) * DyadicScalar(static_cast<long>(1 + rng() % 255)) *
                              DyadicScalar::pow2(-8);
    const std::int64_t pos_bits = fine + 8;
    auto coord = [&] {
      BigInt r;
      // Random bits at 2^-pos_bits resolution, built 64 bits at a time.
      for (std::int64_t b = 0; b < pos_bits; b += 64) {
        r <<= 64;
        r += BigInt(std::to_string(rng()));
      }
      r >>= static_cast<mp_bitcnt_t>(((pos_bits + 63) / 64) * 64 - pos_bits);
      DyadicScalar t = DyadicScalar::grid(r, pos_bits);
      if (t + side > DyadicScalar(1)) t = DyadicScalar(1) - side;
      return t;
    };
    consider({coord(), coord(), side});
  }
  return best;
}

}  // namespace cantorvort
