#include "cantorvort/concentration.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cantorvort/errors.hpp"
#include "cantorvort/measure.hpp"

namespace cantorvort {

namespace {

std::int64_t centers_in(int k, const DyadicCube& q) {
  const DyadicScalar x0 = q.x();
  const DyadicScalar y0 = q.y();
  const DyadicScalar s = q.side();
  return line::count_centers(k, x0, x0 + s) * line::count_centers(k, y0, y0 + s);
}

void check_regime(int k, const DyadicCube& q) {
  if (k < 0) throw DomainError("negative generation");
  if (q.level > cantor_level(k)) {
    throw PreconditionError("cube level " + std::to_string(q.level) + " exceeds 4^k = " +
                            std::to_string(cantor_level(k)) + "; patch balls would straddle the cube");
  }
  if (!q.in_unit()) throw DomainError("cube outside the unit square");
}

}  // namespace

ExtScalar energy_in_cube(const PatchParams& p, const DyadicCube& q) {
  check_regime(p.k, q);
  const std::int64_t n = centers_in(p.k, q);
  if (n == 0) return {};
  return ExtScalar::from_rational(Rational(n)) * patch_energy(p);
}

Rational energy_fraction(int k, const DyadicCube& q) {
  check_regime(k, q);
  return Rational(centers_in(k, q)) * pow2_rational(-2 * k);
}

DefectReport reduced_defect(const DyadicCube& q, int k_max, const Rational& c) {
  if (k_max < 0) throw DomainError("negative generation");
  int k_first = 0;
  while (cantor_level(k_first) < q.level) ++k_first;
  if (k_first > k_max) {
    throw PreconditionError("cube level " + std::to_string(q.level) + " needs k_max >= " + std::to_string(k_first));
  }
  DefectReport r;
  r.cube = q;
  for (int k = k_first; k <= k_max; ++k) {
    const PatchParams p = patch_params(k, c, std::max(k_max, kDefaultMaxGeneration));
    r.per_k_energy.push_back({k, energy_in_cube(p, q), energy_fraction(k, q)});
  }
  r.stabilized_fraction = r.per_k_energy.back().fraction;
  r.omega_value = omega_cube(q).to_rational();
  r.limit_constant = l2_norm_squared(patch_params(k_max, c, std::max(k_max, kDefaultMaxGeneration)));
  return r;
}

WeakPairing weak_pairing_bound(int k, const Rational& c) {
  if (k < 0) throw DomainError("negative generation");
  const PatchParams p = patch_params(k, c, std::max(k, kDefaultMaxGeneration));
  WeakPairing w;
  w.k = k;
  const std::int64_t e = 2 * k - 2 * cantor_level(k);
  w.support_area = pow2_rational(e);
  w.bound = ExtScalar::pow2(e).sqrt() * l2_norm_squared(p).sqrt();
  // phi = (-y, x) on the unit square
  w.phi_sup = std::numbers::sqrt2_v<long double>;
  if (k == 1) w.pairing = std::fabs(pairing_with_rotation_field(p));
  return w;
}

VortexSparseBound vortex_sparse_lower_bound(int n, const Rational& c, int max_generation) {
  if (n < 0) throw DomainError("negative generation");
  if (n > max_generation - 1) {
    throw ResourceLimitError("N = " + std::to_string(n) + " exceeds max generation - 1 = " +
                             std::to_string(max_generation - 1));
  }
  const PatchParams p = patch_params(n, c, max_generation);
  // Largest dyadic side s with s * sqrt(2) < delta, so [x, x + s]^2 sits in the open core disk.
  const Rational d2 = p.delta2();
  std::int64_t level = 0;
  while (!(2 * pow2_rational(-2 * level) < d2)) ++level;

  VortexSparseBound out;
  out.n = n;
  const std::int64_t first = level + 1;
  const std::int64_t last = level + cantor_level(n + 1) - cantor_level(n);
  for (const auto& cc : cantor_generation(n, max_generation)) {
    const DyadicCube inner = DyadicCube::at_corner(cc.center_x, cc.center_y, level);
    if (cc.index == 1) out.inner_cube = inner;
    const SparseFamily t = nested_tower(cc.center_x, cc.center_y, first, last);
    for (std::size_t i = 0; i < t.size(); ++i) out.family.add(t.cubes[i], t.witnesses[i]);
  }
  out.certificate = verify_sparse(out.family);
  for (const auto& q : out.family.cubes) {
    const Rational a = q.area();
    out.area_squares += a * a;
  }
  const ExtScalar pi = ExtScalar::from_long_double(std::numbers::pi_v<long double>);
  out.value = ExtScalar::from_rational(p.omega_plus_pi) / pi * ExtScalar::from_rational(out.area_squares).sqrt();
  return out;
}

bool pow2_below(const Rational& e, const Rational& d) {
  if (sgn(d) <= 0) return false;
  // 2^(a/b) < d  <=>  2^a < d^b, decided without forming 2^a.
  const BigInt& a = e.get_num();
  const unsigned long b = mpz_get_ui(e.get_den_mpz_t());
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), d.get_num_mpz_t(), b);
  mpz_pow_ui(den.get_mpz_t(), d.get_den_mpz_t(), b);
  const Rational db(num, den);
  const std::int64_t f = floor_log2(db);  // 2^f <= d^b < 2^(f+1)
  if (a < f) return true;
  if (a > f) return false;
  return db > pow2_rational(f);
}

DimensionCertificate dimension_zero_certificate(const Rational& gamma, const Rational& delta) {
  if (sgn(gamma) <= 0 || sgn(delta) <= 0) throw DomainError("gamma and delta must be positive");
  if (!gamma.get_den().fits_ulong_p() || gamma.get_den() > 4096) {
    throw ResourceLimitError("gamma denominator too large for the exact comparison");
  }
  for (int m = 0; m <= 30; ++m) {
    const Rational lev(BigInt(static_cast<long>(cantor_level(m))));
    const Rational first = -gamma * lev + 2 * m;
    const Rational second = -lev;
    if (pow2_below(first, delta) && pow2_below(second, delta)) {
      DimensionCertificate cert;
      cert.gamma = gamma;
      cert.delta = delta;
      cert.m = m;
      cert.log2_first = first;
      cert.log2_second = second;
      cert.first = ExtScalar::from_log2(to_long_double(first));
      cert.second = ExtScalar::pow2(-cantor_level(m));
      return cert;
    }
  }
  throw ResourceLimitError("no certificate up to m = 30");
}

}  // namespace cantorvort
