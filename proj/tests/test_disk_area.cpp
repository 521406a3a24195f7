#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cantorvort/disk_area.hpp"

using namespace cantorvort;

namespace {

// Area by integrating the clipped vertical chord over x, split where the chord changes form.
long double oracle_area(long double cx, long double cy, long double r, long double x0, long double y0, long double s) {
  const long double x1 = x0 + s;
  const long double y1 = y0 + s;
  const long double a = std::max(x0, cx - r);
  const long double b = std::min(x1, cx + r);
  if (!(a < b)) return 0.0L;
  std::vector<long double> cuts{a, b};
  for (long double yb : {y0, y1}) {
    const long double d = r * r - (yb - cy) * (yb - cy);
    if (d > 0) {
      for (long double xb : {cx - std::sqrt(d), cx + std::sqrt(d)}) {
        if (xb > a && xb < b) cuts.push_back(xb);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  auto chord = [&](long double x) {
    const long double h = std::sqrt(std::max(0.0L, r * r - (x - cx) * (x - cx)));
    return std::max(0.0L, std::min(y1, cy + h) - std::max(y0, cy - h));
  };
  boost::math::quadrature::tanh_sinh<long double> ts;
  long double total = 0.0L;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) total += ts.integrate(chord, cuts[i], cuts[i + 1]);
  }
  return total;
}

long double ld(const Rational& q) { return to_long_double(q); }

}  // namespace

TEST_CASE("exact classifications") {
  // unit square, disk inside
  CHECK(classify_disk_square(Rational(1, 2), Rational(1, 2), Rational(1, 16), 0, 0, 1) == Overlap::DiskInSquare);
  CHECK(classify_disk_square(Rational(1, 2), Rational(1, 2), 4, 0, 0, 1) == Overlap::SquareInDisk);
  CHECK(classify_disk_square(3, 3, 1, 0, 0, 1) == Overlap::Disjoint);
  CHECK(classify_disk_square(0, 0, 1, 0, 0, 1) == Overlap::Straddle);
  // tangent from outside counts as disjoint
  CHECK(classify_disk_square(2, Rational(1, 2), 1, 0, 0, 1) == Overlap::Disjoint);
  // inscribed disk touches all four sides
  CHECK(classify_disk_square(Rational(1, 2), Rational(1, 2), Rational(1, 4), 0, 0, 1) == Overlap::DiskInSquare);
}

TEST_CASE("closed-form cases") {
  const long double pi = std::numbers::pi_v<long double>;
  const DiskSquareArea quarter = disk_square_area(0, 0, Rational(1, 4), 0, 0, 1);
  CHECK(static_cast<double>(quarter.value) == doctest::Approx(static_cast<double>(pi / 16)).epsilon(1e-15));
  const DiskSquareArea half = disk_square_area(Rational(1, 2), 0, Rational(1, 16), 0, 0, 1);
  CHECK(static_cast<double>(half.value) == doctest::Approx(static_cast<double>(pi / 32)).epsilon(1e-15));
  const DiskSquareArea full = disk_square_area(0, 0, 100, 0, 0, 1);
  CHECK(full.value == 1.0L);
  CHECK(full.error == 0.0L);
  const DiskSquareArea none = disk_square_area(5, 5, 1, 0, 0, 1);
  CHECK(none.value == 0.0L);
}

TEST_CASE("random straddling configurations against the chord integral") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> num(-64, 128);
  int straddles = 0;
  for (int i = 0; i < 400; ++i) {
    const Rational cx(num(rng), 64);
    const Rational cy(num(rng), 64);
    const Rational r2(std::uniform_int_distribution<long>(1, 4096)(rng), 4096);
    const DiskSquareArea a = disk_square_area(cx, cy, r2, 0, 0, 1);
    const long double want = oracle_area(ld(cx), ld(cy), std::sqrt(ld(r2)), 0.0L, 0.0L, 1.0L);
    CHECK(std::fabs(a.value - want) <= 1e-13L);
    CHECK(a.lo() <= want + 1e-13L);
    CHECK(a.hi() >= want - 1e-13L);
    straddles += a.kind == Overlap::Straddle;
  }
  CHECK(straddles > 100);
}

TEST_CASE("scale invariance at extreme sizes") {
  // The same configuration scaled by 2^-40 and 2^40.
  for (int e : {-40, 0, 40}) {
    const Rational s = pow2_rational(e);
    const DiskSquareArea a = disk_square_area(Rational(3, 10) * s, Rational(-1, 5) * s, Rational(1, 2) * s * s, 0, 0, s);
    const long double want = oracle_area(0.3L, -0.2L, std::sqrt(0.5L), 0.0L, 0.0L, 1.0L);
    CHECK(std::fabs(a.value / ld(s * s) - want) <= 1e-14L);
  }
}

TEST_CASE("tiny circle arcs inside a large square use the series branch") {
  // Disk barely poking into the square: area ~ segment with tiny angle.
  const Rational r2 = 1;
  const Rational cx = Rational(-1) + Rational(1, 1 << 20);
  const DiskSquareArea a = disk_square_area(cx, Rational(1, 2), r2, 0, 0, 1);
  const long double want = oracle_area(ld(cx), 0.5L, 1.0L, 0.0L, 0.0L, 1.0L);
  CHECK(a.kind == Overlap::Straddle);
  CHECK(std::fabs(a.value - want) <= 1e-15L + 1e-9L * want);
}
