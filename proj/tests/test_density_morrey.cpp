#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cantorvort/errors.hpp"
#include "cantorvort/vortex.hpp"

using namespace cantorvort;

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

long double ld(const Rational& q) { return to_long_double(q); }

// Disk-square overlap from the clipped chord integral (see the area tests).
long double chord_area(long double cx, long double cy, long double r, long double x0, long double y0, long double s) {
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

// |omega_k|(Q) from the patch definition, centers relative to the cube corner.
long double oracle_mass(const PatchParams& p, const DyadicCube& q) {
  const long double plus = ld(p.omega_plus_pi) / kPi;
  const long double minus = -ld(p.omega_minus_pi) / kPi;
  const long double s = q.side().to_long_double();
  long double total = 0.0L;
  for (const auto& c : cantor_generation(p.k)) {
    const long double cx = ld(c.center_x.to_rational() - q.x().to_rational());
    const long double cy = ld(c.center_y.to_rational() - q.y().to_rational());
    const long double R = std::sqrt(ld(p.r2));
    if (cx + R < 0 || cy + R < 0 || cx - R > s || cy - R > s) continue;
    total += plus * chord_area(cx, cy, ld(p.delta), 0, 0, s);
    total += minus * (chord_area(cx, cy, R, 0, 0, s) - chord_area(cx, cy, std::sqrt(ld(p.delta)), 0, 0, s));
  }
  return total;
}

}  // namespace

TEST_CASE("patch density bands") {
  const PatchParams p = patch_params(1);
  const RadialDensity d = patch_density(p);
  CHECK(d.centers.size() == 4);
  REQUIRE(d.bands.size() == 2);
  CHECK(d.bands[0].outer2 == p.delta2());
  CHECK(d.bands[1].inner2 == p.delta);
  CHECK(d.bands[1].outer2 == p.r2);
  CHECK(*d.bands[1].density_pi == -p.omega_minus_pi);
}

TEST_CASE("cube masses") {
  const PatchParams p = patch_params(1);
  const RadialDensity d = patch_density(p);
  // a whole patch cube holds L1 mass 4^-k exactly
  const CubeMassBounds whole = density_cube_mass(d, cantor_cube(1, 2).cube);
  REQUIRE(whole.exact);
  CHECK(sgn((*whole.exact)[0]) == 0);
  CHECK((*whole.exact)[1] == Rational(1, 4));
  // gap cube
  CHECK(density_cube_mass(d, DyadicCube{2, 2, 0}).value == 0.0L);
  // inside the core
  const CantorCube c = cantor_cube(1, 1);
  const DyadicCube core = DyadicCube::at_corner(c.center_x, c.center_y, 14);
  const CubeMassBounds m = density_cube_mass(d, core);
  REQUIRE(m.exact);
  CHECK((*m.exact)[0] == p.omega_plus_pi * pow2_rational(-28));
  CHECK(m.error == 0.0L);
  // straddling cubes against the chord oracle
  for (std::int64_t lvl = 6; lvl <= 14; ++lvl) {
    const DyadicCube q = DyadicCube::containing(c.center_x, c.center_y, lvl);
    const long double want = oracle_mass(p, q);
    const CubeMassBounds got = density_cube_mass(d, q);
    CHECK(std::fabs(got.value - want) <= 1e-12L * std::max(want, 1e-30L) + got.error);
  }
}

TEST_CASE("branch and bound reproduces an enumeration at shallow levels") {
  const PatchParams p = patch_params(1);
  MorreyConfig cfg;
  cfg.max_level = 9;
  const MorreyReport r = density_morrey_norm(p, cfg);
  REQUIRE(r.per_level_max.size() == 9);
  for (std::int64_t lvl = 1; lvl <= 9; ++lvl) {
    // enumerate cubes meeting some patch support
    long double best = 0.0L;
    const std::int64_t n = std::int64_t{1} << lvl;
    const long double s = std::ldexp(1.0L, static_cast<int>(-lvl));
    const long double R = std::sqrt(ld(p.r2));
    for (const auto& c : cantor_generation(1)) {
      const long double cx = c.center_x.to_long_double();
      const long double cy = c.center_y.to_long_double();
      const auto lo_x = static_cast<std::int64_t>(std::floor((cx - R) / s));
      const auto lo_y = static_cast<std::int64_t>(std::floor((cy - R) / s));
      for (std::int64_t i = std::max<std::int64_t>(lo_x, 0); i <= std::min(n - 1, lo_x + static_cast<std::int64_t>(2 * R / s) + 1); ++i) {
        for (std::int64_t j = std::max<std::int64_t>(lo_y, 0); j <= std::min(n - 1, lo_y + static_cast<std::int64_t>(2 * R / s) + 1); ++j) {
          best = std::max(best, oracle_mass(p, DyadicCube{lvl, BigInt(static_cast<long>(i)), BigInt(static_cast<long>(j))}));
        }
      }
    }
    const long double want = (1 + 2 * lvl) * best;
    const long double got = r.per_level_max[static_cast<std::size_t>(lvl - 1)].value.to_long_double();
    CHECK(got == doctest::Approx(static_cast<double>(want)).epsilon(1e-11));
  }
}

TEST_CASE("patch Morrey norm up to level 40") {
  const PatchParams p = patch_params(1);
  MorreyConfig cfg;
  cfg.max_level = 40;
  const MorreyReport r = density_morrey_norm(p, cfg);
  REQUIRE(r.exact);
  CHECK(*r.exact == Rational(9, 4));
  CHECK(r.argmax.level == 4);
  const long double plus = ld(p.omega_plus_pi) / kPi;
  for (const auto& lm : r.per_level_max) {
    CHECK(lm.value.to_long_double() <= 4.0L);
    if (lm.level >= 13) {
      // the deepest maxima are full core cubes
      const long double want = (1 + 2 * lm.level) * plus * std::ldexp(1.0L, static_cast<int>(-2 * lm.level));
      CHECK(lm.value.to_long_double() == doctest::Approx(static_cast<double>(want)).epsilon(1e-15));
    }
  }
  cfg.max_level = 65;
  CHECK_THROWS_AS((void)density_morrey_norm(p, cfg), PreconditionError);
}

TEST_CASE("generation 2 patches at the full cube level") {
  const PatchParams p = patch_params(2);
  MorreyConfig cfg;
  cfg.max_level = 20;
  const MorreyReport r = density_morrey_norm(p, cfg);
  const LevelMax& at16 = r.per_level_max[15];
  REQUIRE(at16.exact);
  CHECK(*at16.exact == Rational(33, 16));
}

TEST_CASE("scaled single patch") {
  const MorreyReport unit = dm_scaling_morrey(DyadicScalar::pow2(-1), 0);
  CHECK(unit.norm_value.to_long_double() == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  for (int L : {4, 8, 12, 16}) {
    const long double l = L;
    // level 0 holds the whole disk, level L a quarter of it; deeper cubes only lose weight
    const long double half_want = std::max(kPi / std::sqrt(l), kPi * std::sqrt(1 + 2 * l) / (4 * std::sqrt(l)));
    const long double one_want = std::max(kPi / std::sqrt(l), kPi * (1 + 2 * l) / (4 * std::sqrt(l)));
    CHECK(dm_scaling_morrey(DyadicScalar::pow2(-L), Rational(1, 2)).norm_value.to_long_double() ==
          doctest::Approx(static_cast<double>(half_want)).epsilon(1e-12));
    CHECK(dm_scaling_morrey(DyadicScalar::pow2(-L), 1).norm_value.to_long_double() ==
          doctest::Approx(static_cast<double>(one_want)).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)dm_scaling_morrey(DyadicScalar(1), 1), DomainError);
}
