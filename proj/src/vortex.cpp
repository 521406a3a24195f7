#include "cantorvort/vortex.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <numbers>

#include "cantorvort/errors.hpp"

namespace cantorvort {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr long double kLn2 = std::numbers::ln2_v<long double>;

ExtScalar over_pi(const Rational& q) { return ExtScalar::from_rational(q) / ExtScalar::from_long_double(kPi); }

long double ld(const Rational& q) { return to_long_double(q); }

BigInt floor_scaled(const Rational& v, std::int64_t level) {
  BigInt num = v.get_num();
  num <<= static_cast<mp_bitcnt_t>(level);
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), v.get_den().get_mpz_t());
  return out;
}

}  // namespace

ExtScalar PatchParams::omega_plus() const { return over_pi(omega_plus_pi); }
ExtScalar PatchParams::omega_minus() const { return over_pi(omega_minus_pi); }

PatchParams patch_params(int k, const Rational& c, int max_generation) {
  if (c <= 1) throw DomainError("patch constant c must exceed 1");
  if (k < 0) throw DomainError("negative generation");
  if (k > max_generation) throw ResourceLimitError("patch generation above the configured maximum");
  PatchParams p;
  p.k = k;
  p.c = c;
  const Rational l2 = pow2_rational(-2 * cantor_level(k));
  p.delta = l2 / (8 * c);
  p.r2 = c * p.delta;
  p.omega_plus_pi = pow2_rational(-2 * k) / (2 * p.delta2());
  p.omega_minus_pi = -p.omega_plus_pi * p.delta2() / (p.r2 - p.delta);
  if (!(4 * p.r2 < l2)) throw DomainError("patch ball does not fit its Cantor cube");
  return p;
}

const char* region_name(PatchRegion r) {
  switch (r) {
    case PatchRegion::Core: return "core";
    case PatchRegion::Gap: return "gap";
    case PatchRegion::Annulus: return "annulus";
    case PatchRegion::Outside: return "outside";
  }
  return "?";
}

PatchHit locate_patch(const PatchParams& p, const Point& x) {
  PatchHit hit;
  const std::int64_t level = cantor_level(p.k);
  const auto ix = line::locate(p.k, DyadicScalar::grid(floor_scaled(x.x, level), level));
  const auto iy = line::locate(p.k, DyadicScalar::grid(floor_scaled(x.y, level), level));
  if (!ix || !iy) return hit;
  std::int64_t m = 0;
  for (int j = p.k - 1; j >= 0; --j) {
    m = (m << 2) | (((*ix >> j) & 1) | (((*iy >> j) & 1) << 1));
  }
  const CantorCube cube = cantor_cube(p.k, m + 1, std::max(p.k, kDefaultMaxGeneration));
  hit.m = m + 1;
  hit.dx = x.x - cube.center_x.to_rational();
  hit.dy = x.y - cube.center_y.to_rational();
  hit.d2 = hit.dx * hit.dx + hit.dy * hit.dy;
  if (hit.d2 < p.delta2()) {
    hit.region = PatchRegion::Core;
  } else if (hit.d2 < p.delta) {
    hit.region = PatchRegion::Gap;
  } else if (hit.d2 < p.r2) {
    hit.region = PatchRegion::Annulus;
  }
  return hit;
}

Rational vorticity_times_pi_at(const PatchParams& p, const Point& x) {
  switch (locate_patch(p, x).region) {
    case PatchRegion::Core: return p.omega_plus_pi;
    case PatchRegion::Annulus: return p.omega_minus_pi;
    default: return 0;
  }
}

ExtScalar vorticity_at(const PatchParams& p, const Point& x) { return over_pi(vorticity_times_pi_at(p, x)); }

RadialSpeed radial_speed(const PatchParams& p) { return {p.delta2(), p.delta, p.r2}; }

Rational speed_branch_times_pi2(const PatchParams& p, PatchRegion branch, const Rational& r2) {
  const Rational inner = p.delta2() * p.omega_plus_pi;
  switch (branch) {
    case PatchRegion::Core: return r2 * p.omega_plus_pi * p.omega_plus_pi / 4;
    case PatchRegion::Gap: return inner * inner / (4 * r2);
    case PatchRegion::Annulus: {
      const Rational num = inner + p.omega_minus_pi * (r2 - p.delta);
      return num * num / (4 * r2);
    }
    case PatchRegion::Outside: break;
  }
  return 0;
}

Rational speed_squared_times_pi2(const PatchParams& p, const Rational& r2) {
  if (sgn(r2) < 0) throw DomainError("negative squared radius");
  if (r2 < p.delta2()) return speed_branch_times_pi2(p, PatchRegion::Core, r2);
  if (r2 < p.delta) return speed_branch_times_pi2(p, PatchRegion::Gap, r2);
  if (r2 < p.r2) return speed_branch_times_pi2(p, PatchRegion::Annulus, r2);
  return 0;
}

ExtScalar speed_profile(const PatchParams& p, const Rational& r2) {
  return ExtScalar::from_rational(speed_squared_times_pi2(p, r2)).sqrt() / ExtScalar::from_long_double(kPi);
}

Velocity velocity_at(const PatchParams& p, const Point& x) {
  const PatchHit hit = locate_patch(p, x);
  if (hit.m == 0 || sgn(hit.d2) == 0) return {};
  const Rational s2 = speed_squared_times_pi2(p, hit.d2);
  if (sgn(s2) == 0) return {};
  // u = |u| (-dy, dx) / r, and (|u| pi / r)^2 is rational.
  const ExtScalar scale = ExtScalar::from_rational(s2 / hit.d2).sqrt() / ExtScalar::from_long_double(kPi);
  return {ExtScalar::from_rational(-hit.dy) * scale, ExtScalar::from_rational(hit.dx) * scale};
}

CirculationReport patch_l1_and_circulation(const PatchParams& p) {
  CirculationReport r;
  // Omega * (pi r^2) = (Omega pi) r^2: both masses are rational.
  const Rational core = p.omega_plus_pi * p.delta2();
  const Rational ring = p.omega_minus_pi * (p.r2 - p.delta);
  r.l1_per_cube = core - ring;
  r.net_circulation = core + ring;
  r.total_l1 = r.l1_per_cube * pow2_rational(2 * p.k);
  return r;
}

// ---------------------------------------------------------------------------
// Energy

namespace {

struct EnergyTerms {
  long double core_gap_ring = 0.0L;  // all of X except the middle annulus
  long double middle = 0.0L;
};

// X = pi^2 ∫ |u|^2 r dr split into the middle-annulus part and the rest; patch energy is 2 X / pi.
EnergyTerms closed_form_terms(const PatchParams& p) {
  const Rational P = p.omega_plus_pi * p.delta2();  // = 4^-k / 2
  const Rational a = P / (2 * (p.r2 - p.delta));
  const Rational r4 = p.r2 * p.r2;
  const Rational constant = P * P / 16 + a * a * (-p.r2 * (p.r2 - p.delta) + (r4 - p.delta2()) / 4);
  // ln(1/delta) = 2 lev(k) ln 2 + ln(8c)
  const Rational mid_coef = P * P / 8;
  const long double ln_c = std::log(ld(p.c));
  const long double ln_8c = 3.0L * kLn2 + ln_c;
  EnergyTerms t;
  t.middle = ld(mid_coef * 2 * cantor_level(p.k)) * kLn2 + ld(mid_coef) * ln_8c;
  t.core_gap_ring = ld(constant) + ld(a * a * r4 / 2) * ln_c;
  return t;
}

// 2 pi ∫_a^b |u|^2 r dr, optionally with r = e^t.
long double radial_integral(const std::function<long double(long double)>& f, long double a, long double b,
                            bool log_substitution) {
  using boost::math::quadrature::gauss_kronrod;
  if (log_substitution) {
    auto g = [&](long double t) {
      const long double r = std::exp(t);
      return f(r) * r;
    };
    return gauss_kronrod<long double, 31>::integrate(g, std::log(a), std::log(b), 15, 1e-13L);
  }
  return gauss_kronrod<long double, 31>::integrate(f, a, b, 15, 1e-13L);
}

long double speed_ld(const PatchParams& p, long double r) {
  return std::sqrt(ld(speed_squared_times_pi2(p, rational_from(r * r)))) / kPi;
}

}  // namespace

ExtScalar patch_energy(const PatchParams& p, EnergyMethod method) {
  if (method == EnergyMethod::ClosedForm) {
    const EnergyTerms t = closed_form_terms(p);
    return ExtScalar::from_long_double(2.0L * (t.core_gap_ring + t.middle) / kPi);
  }
  if (p.k > 2) throw CapabilityError("quadrature energy is limited to k <= 2");
  const long double d = ld(p.delta);
  const long double sd = std::sqrt(d);
  const long double R = std::sqrt(ld(p.r2));
  auto integrand = [&](long double r) {
    const long double s = speed_ld(p, r);
    return 2.0L * kPi * s * s * r;
  };
  const long double e = radial_integral(integrand, 0.0L, d, false) + radial_integral(integrand, d, sd, true) +
                        radial_integral(integrand, sd, R, true);
  return ExtScalar::from_long_double(e);
}

ExtScalar l2_norm_squared(const PatchParams& p, EnergyMethod method) {
  return patch_energy(p, method) * ExtScalar::pow2(2 * p.k);
}

ExtScalar l2_middle_term(const PatchParams& p) {
  const EnergyTerms t = closed_form_terms(p);
  return ExtScalar::from_long_double(2.0L * t.middle / kPi) * ExtScalar::pow2(2 * p.k);
}

// ---------------------------------------------------------------------------
// Polar quadrature around each patch

namespace {

constexpr int kAngles = 96;  // periodic trapezoid: exact for trigonometric degree < 96

// ∫ over B(center, R) of g(r, theta) r dr dtheta, splitting r at the speed breakpoints.
// g receives (r, theta, speed at r).
using PolarIntegrand = std::function<long double(long double, long double, long double)>;

long double polar_integral(const PatchParams& p, const PolarIntegrand& g) {
  using boost::math::quadrature::gauss_kronrod;
  auto ring = [&](long double r) {
    const long double v = speed_ld(p, r);
    long double s = 0.0L;
    for (int i = 0; i < kAngles; ++i) s += g(r, 2.0L * kPi * i / kAngles, v);
    return s * (2.0L * kPi / kAngles) * r;
  };
  const long double d = ld(p.delta);
  const long double sd = std::sqrt(d);
  const long double R = std::sqrt(ld(p.r2));
  return gauss_kronrod<long double, 15>::integrate(ring, 0.0L, d, 8, 1e-12L) +
         gauss_kronrod<long double, 15>::integrate(ring, d, sd, 8, 1e-12L) +
         gauss_kronrod<long double, 15>::integrate(ring, sd, R, 8, 1e-12L);
}

}  // namespace

long double pairing_with_rotation_field(const PatchParams& p) {
  if (p.k > 2) throw CapabilityError("pairing quadrature is limited to k <= 2");
  long double total = 0.0L;
  for (const auto& cube : cantor_generation(p.k, std::max(p.k, kDefaultMaxGeneration))) {
    const long double cx = cube.center_x.to_long_double();
    const long double cy = cube.center_y.to_long_double();
    total += polar_integral(p, [&](long double r, long double th, long double v) {
      const long double x = cx + r * std::cos(th);
      const long double y = cy + r * std::sin(th);
      // u = v (-sin, cos), phi = (-y, x)
      return v * (std::sin(th) * y + std::cos(th) * x);
    });
  }
  return total;
}

SteadyResiduals steady_state_residuals(const PatchParams& p) {
  if (p.k > 1) throw CapabilityError("steady-state quadrature is limited to k <= 1");
  SteadyResiduals out;
  const CantorCube cube = cantor_cube(p.k, 1);
  const long double a = cube.cube.x().to_long_double();
  const long double b = a + cube.cube.side().to_long_double();
  const long double c = cube.cube.y().to_long_double();
  const long double d = c + cube.cube.side().to_long_double();
  const long double cx = cube.center_x.to_long_double();
  const long double cy = cube.center_y.to_long_double();

  // Bumps vanishing to second order on the cube boundary, times low-degree monomials.
  struct Poly {
    int px;
    int py;
  };
  const Poly battery[] = {{0, 0}, {1, 0}, {0, 1}, {2, 1}};
  for (const Poly& m : battery) {
    // f = (x-a)^3 (b-x)^3 (y-c)^3 (d-y)^3 x^px y^py; scalar test for div u = 0,
    // stream function for the divergence-free test field phi = (-f_y, f_x).
    auto grad = [&](long double x, long double y, long double& fx, long double& fy) {
      const long double bx = (x - a) * (b - x);
      const long double by = (y - c) * (d - y);
      const long double dbx = (b - x) - (x - a);
      const long double dby = (d - y) - (y - c);
      const long double gx = std::pow(bx, 3) * std::pow(x, m.px);
      const long double gy = std::pow(by, 3) * std::pow(y, m.py);
      const long double dgx = 3 * bx * bx * dbx * std::pow(x, m.px) +
                              (m.px ? m.px * std::pow(bx, 3) * std::pow(x, m.px - 1) : 0.0L);
      const long double dgy = 3 * by * by * dby * std::pow(y, m.py) +
                              (m.py ? m.py * std::pow(by, 3) * std::pow(y, m.py - 1) : 0.0L);
      fx = dgx * gy;
      fy = gx * dgy;
    };
    const long double div = polar_integral(p, [&](long double r, long double th, long double v) {
      long double fx = 0;
      long double fy = 0;
      grad(cx + r * std::cos(th), cy + r * std::sin(th), fx, fy);
      return v * (-std::sin(th) * fx + std::cos(th) * fy);
    });
    // (u . grad) u = -v^2 / r e_r for a radial eddy.
    const long double transport = polar_integral(p, [&](long double r, long double th, long double v) {
      if (r == 0.0L) return 0.0L;
      long double fx = 0;
      long double fy = 0;
      grad(cx + r * std::cos(th), cy + r * std::sin(th), fx, fy);
      const long double phix = -fy;
      const long double phiy = fx;
      return -v * v / r * (std::cos(th) * phix + std::sin(th) * phiy);
    });
    out.divergence = std::max(out.divergence, std::fabs(div));
    out.transport = std::max(out.transport, std::fabs(transport));
  }
  return out;
}

}  // namespace cantorvort
