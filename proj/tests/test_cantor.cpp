#include <doctest.h>

#include <random>
#include <vector>

#include "cantorvort/cantor.hpp"
#include "cantorvort/errors.hpp"

using namespace cantorvort;

namespace {

// Left endpoints of the generation-k intervals, built by keeping both end pieces.
std::vector<Rational> oracle_intervals(int k) {
  std::vector<Rational> left{Rational(0)};
  Rational len = 1;
  for (int j = 1; j <= k; ++j) {
    const Rational next = pow2_rational(-cantor_level(j));
    std::vector<Rational> out;
    for (const auto& a : left) {
      out.push_back(a);
      out.push_back(a + len - next);
    }
    left = out;
    len = next;
  }
  return left;
}

struct OracleCube {
  Rational x;
  Rational y;
};

// Address order: SW, SE, NW, NE at every step.
std::vector<OracleCube> oracle_cubes(int k) {
  std::vector<OracleCube> cubes{{0, 0}};
  Rational len = 1;
  for (int j = 1; j <= k; ++j) {
    const Rational next = pow2_rational(-cantor_level(j));
    std::vector<OracleCube> out;
    for (const auto& c : cubes) {
      for (int q = 0; q < 4; ++q) {
        out.push_back({c.x + ((q & 1) ? Rational(len - next) : Rational(0)),
                       c.y + ((q & 2) ? Rational(len - next) : Rational(0))});
      }
    }
    cubes = out;
    len = next;
  }
  return cubes;
}

}  // namespace

TEST_CASE("levels and lengths") {
  CHECK(cantor_level(0) == 0);
  CHECK(cantor_level(1) == 4);
  CHECK(cantor_level(2) == 16);
  CHECK(cantor_level(3) == 64);
  CHECK(cantor_length(2).to_rational() == pow2_rational(-16));
}

TEST_CASE("generation cubes match the recursive construction") {
  for (int k = 0; k <= 3; ++k) {
    const auto got = cantor_generation(k);
    const auto want = oracle_cubes(k);
    REQUIRE(got.size() == want.size());
    const Rational half_side = pow2_rational(-cantor_level(k) - 1);
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].index == static_cast<std::int64_t>(i + 1));
      CHECK(got[i].cube.level == cantor_level(k));
      CHECK(got[i].cube.x().to_rational() == want[i].x);
      CHECK(got[i].cube.y().to_rational() == want[i].y);
      CHECK(got[i].center_x.to_rational() == want[i].x + half_side);
      CHECK(got[i].center_y.to_rational() == want[i].y + half_side);
    }
  }
}

TEST_CASE("addresses") {
  const CantorCube c = cantor_cube(2, 7);  // m - 1 = 6 = 1*4 + 2
  REQUIRE(c.address.size() == 2);
  CHECK(c.address[0] == Quadrant::SE);
  CHECK(c.address[1] == Quadrant::NW);
  CHECK(c.cube == cantor_generation(2)[6].cube);
  CHECK_THROWS_AS((void)cantor_cube(1, 5), DomainError);
  CHECK_THROWS_AS((void)cantor_generation(7, 6), ResourceLimitError);
}

TEST_CASE("one-dimensional descent") {
  for (int k = 0; k <= 2; ++k) {
    const auto want = oracle_intervals(k);
    const auto got = line::corners(k);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].to_rational() == want[i]);
  }
  std::mt19937_64 rng(11);
  const int k = 2;
  const auto left = oracle_intervals(k);
  const Rational len = pow2_rational(-cantor_level(k));
  for (int i = 0; i < 300; ++i) {
    const std::int64_t level = std::uniform_int_distribution<std::int64_t>(0, 20)(rng);
    const std::int64_t n = std::int64_t{1} << level;
    const std::int64_t a = std::uniform_int_distribution<std::int64_t>(0, n - 1)(rng);
    const std::int64_t b = std::uniform_int_distribution<std::int64_t>(a + 1, n)(rng);
    const DyadicScalar lo = DyadicScalar::grid(BigInt(a), level);
    const DyadicScalar hi = DyadicScalar::grid(BigInt(b), level);
    const Rational qlo = lo.to_rational();
    const Rational qhi = hi.to_rational();
    std::int64_t centers = 0, contained = 0, meeting = 0;
    for (const auto& x : left) {
      const Rational mid = x + len / 2;
      if (mid >= qlo && mid < qhi) ++centers;
      if (x >= qlo && x + len <= qhi) ++contained;
      if (x < qhi && x + len >= qlo) ++meeting;
    }
    CHECK(line::count_centers(k, lo, hi) == centers);
    CHECK(line::count_contained(k, lo, hi) == contained);
    CHECK(line::count_meeting(k, lo, hi) == meeting);
    std::optional<std::int64_t> where;
    for (std::size_t j = 0; j < left.size(); ++j) {
      if (qlo >= left[j] && qlo < left[j] + len) where = static_cast<std::int64_t>(j);
    }
    CHECK(line::locate(k, lo) == where);
  }
}

TEST_CASE("generation bracket follows l_{j+1} <= side < l_j") {
  auto oracle = [](const Rational& s) {
    int j = 0;
    while (!(pow2_rational(-cantor_level(j + 1)) <= s)) ++j;
    return j;
  };
  CHECK(generation_bracket(DyadicScalar(1)) == 0);
  for (std::int64_t e = 1; e <= 70; ++e) {
    const DyadicScalar s = DyadicScalar::pow2(-e);
    CHECK(generation_bracket(s) == oracle(s.to_rational()));
  }
  CHECK(generation_bracket(DyadicScalar::pow2(-16)) == 1);
  CHECK(generation_bracket(DyadicScalar::pow2(-64)) == 2);
  CHECK(generation_bracket(DyadicScalar::pow2(-17)) == 2);
}

TEST_CASE("intersections with the generation squares") {
  std::mt19937_64 rng(5);
  for (int j = 1; j <= 2; ++j) {
    const auto cubes = oracle_cubes(j);
    const Rational l = pow2_rational(-cantor_level(j));
    for (int i = 0; i < 200; ++i) {
      const std::int64_t level = std::uniform_int_distribution<std::int64_t>(cantor_level(j), cantor_level(j) + 6)(rng);
      const std::int64_t n = std::int64_t{1} << std::min<std::int64_t>(level, 40);
      const std::int64_t ix = std::uniform_int_distribution<std::int64_t>(0, n - 2)(rng);
      const ArbitraryCube q{DyadicScalar::grid(BigInt(ix), std::min<std::int64_t>(level, 40)),
                            DyadicScalar::grid(BigInt(ix), std::min<std::int64_t>(level, 40)),
                            DyadicScalar::pow2(-level)};
      const Rational x = q.x.to_rational();
      const Rational y = q.y.to_rational();
      const Rational s = q.side.to_rational();
      std::int64_t want = 0;
      for (const auto& c : cubes) {
        if (c.x < x + s && c.x + l >= x && c.y < y + s && c.y + l >= y) ++want;
      }
      CHECK(count_intersections(j, q) == want);
    }
  }
  CHECK(max_intersections(1, 500, 1).max_count == 1);
  CHECK(max_intersections(2, 500, 1).max_count == 1);
}

TEST_CASE("cube geometry") {
  const DyadicCube q{2, 1, 3};
  CHECK(q.child(3) == DyadicCube{3, 3, 7});
  CHECK(q.child(3).parent() == q);
  CHECK(q.contains(q.child(1)));
  CHECK(!q.child(0).contains(q));
  CHECK(q.disjoint(DyadicCube{2, 0, 3}));
  CHECK(q.area() == Rational(1, 16));
  CHECK(!DyadicCube{1, 2, 0}.in_unit());
}
