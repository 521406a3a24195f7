#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cantorvort/errors.hpp"
#include "cantorvort/vortex.hpp"

using namespace cantorvort;

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

// Speed from the vorticity alone: |u|(r) = r^-1 ∫_0^r s omega(s) ds, with omega read
// from vorticity_times_pi_at along a ray and integrated piecewise between sample points.
struct RayOracle {
  const PatchParams& p;
  Point center;

  long double omega(long double r) const {
    const Point x{center.x + rational_from(r), center.y};
    return to_long_double(vorticity_times_pi_at(p, x)) / kPi;
  }

  long double speed(long double r, int n = 200000) const {
    // geometric grid from r * 2^-40 up to r, plus the tiny inner disk (omega constant there)
    const long double r0 = r * std::ldexp(1.0L, -40);
    long double acc = omega(r0 / 2) * r0 * r0 / 2;
    const long double q = std::pow(r / r0, 1.0L / n);
    long double a = r0;
    for (int i = 0; i < n; ++i) {
      const long double b = a * q;
      const long double mid = std::sqrt(a * b);
      acc += omega(mid) * (b * b - a * a) / 2;
      a = b;
    }
    return acc / r;
  }
};

long double ld(const Rational& q) { return to_long_double(q); }

}  // namespace

TEST_CASE("parameters for k = 1 and k = 2") {
  const PatchParams p1 = patch_params(1);
  CHECK(p1.delta == pow2_rational(-12));
  CHECK(p1.r2 == pow2_rational(-11));
  CHECK(p1.omega_plus_pi == pow2_rational(21));
  CHECK(p1.omega_minus_pi == -pow2_rational(9));

  const PatchParams p2 = patch_params(2);
  CHECK(p2.delta == pow2_rational(-36));
  CHECK(p2.omega_plus_pi == pow2_rational(67));
  CHECK(p2.omega_plus().log2() == doctest::Approx(67.0 - std::log2(std::numbers::pi)));

  CHECK_THROWS_AS((void)patch_params(1, 1), DomainError);
  CHECK_THROWS_AS((void)patch_params(7, 2, 6), ResourceLimitError);
}

TEST_CASE("exact identities for k = 1..4") {
  for (int k = 1; k <= 4; ++k) {
    const PatchParams p = patch_params(k);
    const CirculationReport c = patch_l1_and_circulation(p);
    CHECK(sgn(c.net_circulation) == 0);
    CHECK(c.l1_per_cube == pow2_rational(-2 * k));
    CHECK(c.total_l1 == 1);
    CHECK(sgn(speed_squared_times_pi2(p, p.r2)) == 0);
    CHECK(speed_branch_times_pi2(p, PatchRegion::Core, p.delta2()) ==
          speed_branch_times_pi2(p, PatchRegion::Gap, p.delta2()));
    CHECK(speed_branch_times_pi2(p, PatchRegion::Gap, p.delta) ==
          speed_branch_times_pi2(p, PatchRegion::Annulus, p.delta));
    CHECK(sgn(speed_branch_times_pi2(p, PatchRegion::Annulus, p.r2)) == 0);
  }
}

TEST_CASE("L1 mass and circulation by grid summation") {
  const PatchParams p = patch_params(1);
  const CantorCube c = cantor_cube(1, 3);
  const Rational cx = c.center_x.to_rational();
  const Rational cy = c.center_y.to_rational();
  // Coarse cells resolve the annulus; a fine window around the center resolves the core.
  auto sum = [&](std::int64_t level, std::int64_t half, std::int64_t skip) {
    long double l1 = 0.0L;
    long double net = 0.0L;
    const Rational h = pow2_rational(-level);
    for (std::int64_t i = -half; i < half; ++i) {
      for (std::int64_t j = -half; j < half; ++j) {
        if (i >= -skip && i < skip && j >= -skip && j < skip) continue;
        const Point x{cx + (Rational(i) + Rational(1, 2)) * h, cy + (Rational(j) + Rational(1, 2)) * h};
        const long double w = ld(vorticity_times_pi_at(p, x)) / kPi * ld(h * h);
        l1 += std::fabs(w);
        net += w;
      }
    }
    return std::pair{l1, net};
  };
  const auto [coarse_l1, coarse_net] = sum(12, 96, 2);
  const auto [fine_l1, fine_net] = sum(16, 32, 0);
  CHECK(coarse_l1 + fine_l1 == doctest::Approx(0.25).epsilon(0.02));
  CHECK(fine_l1 == doctest::Approx(0.125).epsilon(0.02));
  CHECK(std::fabs(coarse_net + fine_net) < 0.005L);
}

TEST_CASE("regions and support") {
  const PatchParams p = patch_params(1);
  const CantorCube c = cantor_cube(1, 1);
  const Rational cx = c.center_x.to_rational();
  const Rational cy = c.center_y.to_rational();
  CHECK(locate_patch(p, {cx, cy}).region == PatchRegion::Core);
  CHECK(locate_patch(p, {cx, cy}).m == 1);
  CHECK(locate_patch(p, {cx + pow2_rational(-10), cy}).region == PatchRegion::Gap);
  CHECK(locate_patch(p, {cx + pow2_rational(-6) + pow2_rational(-8), cy}).region == PatchRegion::Annulus);
  CHECK(locate_patch(p, {cx + pow2_rational(-5), cy}).region == PatchRegion::Outside);
  CHECK(locate_patch(p, {Rational(1, 2), Rational(1, 2)}).m == 0);
  const Velocity v = velocity_at(p, {Rational(1, 2), Rational(1, 3)});
  CHECK(v.ux.is_zero());
  CHECK(v.uy.is_zero());
  CHECK(vorticity_at(p, {Rational(1, 2), Rational(1, 3)}).is_zero());
}

TEST_CASE("speed profile agrees with the circulation integral of the vorticity") {
  for (int k = 1; k <= 2; ++k) {
    const PatchParams p = patch_params(k);
    const CantorCube c = cantor_cube(k, 1);
    const RayOracle oracle{p, {c.center_x.to_rational(), c.center_y.to_rational()}};
    const long double d = ld(p.delta);
    const long double R = std::sqrt(ld(p.r2));
    for (long double r : {d / 2, 2 * d, std::sqrt(d) / 2, std::sqrt(d) * 1.2L, R * 0.9L}) {
      const long double want = oracle.speed(r);
      const long double got = speed_profile(p, rational_from(r * r)).to_long_double();
      CHECK(std::fabs(got - want) <= 1e-3L * std::max(want, 1e-30L) + 1e-12L * want);
    }
  }
}

TEST_CASE("velocity is tangential with the profile speed") {
  const PatchParams p = patch_params(1);
  const CantorCube c = cantor_cube(1, 2);
  const Rational dx = pow2_rational(-7);
  const Rational dy = pow2_rational(-8);
  const Velocity v = velocity_at(p, {c.center_x.to_rational() + dx, c.center_y.to_rational() + dy});
  const long double ux = v.ux.to_long_double();
  const long double uy = v.uy.to_long_double();
  CHECK(std::fabs(ux * ld(dx) + uy * ld(dy)) < 1e-12L * std::hypot(ux, uy) * ld(dx));
  const long double speed = speed_profile(p, dx * dx + dy * dy).to_long_double();
  CHECK(std::hypot(ux, uy) == doctest::Approx(static_cast<double>(speed)).epsilon(1e-15));
  CHECK(uy > 0);  // counter-clockwise near a positive core
}

TEST_CASE("energies") {
  const long double limit = std::log(2.0L) / (8 * kPi);
  long double prev = INFINITY;
  for (int k = 1; k <= 4; ++k) {
    const PatchParams p = patch_params(k);
    const long double e = l2_norm_squared(p).to_long_double();
    CHECK(e >= 1.0L / 50);
    CHECK(e <= 1.0L);
    CHECK(std::fabs(e - limit) < prev);
    prev = std::fabs(e - limit);
    CHECK(l2_middle_term(p).to_long_double() <= e);
  }
  for (int k = 1; k <= 2; ++k) {
    const PatchParams p = patch_params(k);
    // independent radial integral of the exact speed formula, r = e^t
    const long double d = ld(p.delta);
    const long double R = std::sqrt(ld(p.r2));
    auto f = [&](long double t) {
      const long double r = std::exp(t);
      const long double s2 = ld(speed_squared_times_pi2(p, rational_from(r * r))) / (kPi * kPi);
      return 2 * kPi * s2 * r * r;
    };
    using GK = boost::math::quadrature::gauss_kronrod<long double, 61>;
    const long double core = 2 * kPi * ld(p.omega_plus_pi * p.omega_plus_pi) / (kPi * kPi) / 4 * std::pow(d, 4) / 4;
    const long double want = core + GK::integrate(f, std::log(d), std::log(std::sqrt(d)), 10, 1e-14L) +
                             GK::integrate(f, std::log(std::sqrt(d)), std::log(R), 10, 1e-14L);
    CHECK(patch_energy(p).to_long_double() == doctest::Approx(static_cast<double>(want)).epsilon(1e-10));
    const long double q = l2_norm_squared(p, EnergyMethod::Quadrature).to_long_double();
    CHECK(std::fabs(q - l2_norm_squared(p).to_long_double()) <= 1e-6L * q);
  }
  CHECK_THROWS_AS((void)patch_energy(patch_params(3), EnergyMethod::Quadrature), CapabilityError);
}

TEST_CASE("steady-state residuals for k <= 1") {
  for (int k = 0; k <= 1; ++k) {
    const SteadyResiduals r = steady_state_residuals(patch_params(k));
    CHECK(r.divergence < 1e-5L);
    CHECK(r.transport < 1e-5L);
  }
  CHECK_THROWS_AS((void)steady_state_residuals(patch_params(2)), CapabilityError);
}

TEST_CASE("pairing with the rotation field") {
  const PatchParams p = patch_params(1);
  const long double d = ld(p.delta);
  const long double R = std::sqrt(ld(p.r2));
  auto f = [&](long double t) {
    const long double r = std::exp(t);
    const long double s = std::sqrt(ld(speed_squared_times_pi2(p, rational_from(r * r)))) / kPi;
    return 2 * kPi * s * r * r * r;
  };
  using GK = boost::math::quadrature::gauss_kronrod<long double, 61>;
  const long double core = 2 * kPi * ld(p.omega_plus_pi) / kPi / 2 * std::pow(d, 4) / 4;
  const long double per_patch = core + GK::integrate(f, std::log(d), std::log(std::sqrt(d)), 15, 1e-22L) +
                                GK::integrate(f, std::log(std::sqrt(d)), std::log(R), 15, 1e-22L);
  CHECK(pairing_with_rotation_field(p) == doctest::Approx(static_cast<double>(4 * per_patch)).epsilon(1e-6));
}
