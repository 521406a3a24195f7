#include "cantorvort/sparse.hpp"

#include <algorithm>
#include <numeric>

#include "cantorvort/errors.hpp"
#include "cantorvort/measure.hpp"

namespace cantorvort {

Rational Witness::area_ratio(const DyadicCube& q) const {
  if (!hole) return 1;
  return Rational(1) - pow2_rational(-2 * (hole->level - q.level));
}

void SparseFamily::add(DyadicCube q, Witness w) {
  cubes.push_back(std::move(q));
  witnesses.push_back(std::move(w));
}

SparseFamily nested_tower(const DyadicScalar& x, const DyadicScalar& y, std::int64_t first_level,
                          std::int64_t last_level) {
  if (first_level < 0 || last_level < first_level) throw DomainError("bad tower level range");
  SparseFamily fam;
  for (std::int64_t j = first_level; j <= last_level; ++j) {
    // The last cube gives up its corner child as well, so every ratio is 3/4.
    fam.add(DyadicCube::at_corner(x, y, j), Witness{DyadicCube::at_corner(x, y, j + 1)});
  }
  return fam;
}

SparseFamily build_tower(int k, std::int64_t m, int max_generation) {
  if (k < 0) throw DomainError("negative generation");
  if (k > max_generation) {
    throw ResourceLimitError("tower generation " + std::to_string(k) + " exceeds max generation " +
                             std::to_string(max_generation));
  }
  const CantorCube c = cantor_cube(k, m, max_generation);
  const std::int64_t first = (std::int64_t{1} << (2 * k)) + 1;
  const std::int64_t last = std::int64_t{1} << (2 * (k + 1));
  return nested_tower(c.cube.x(), c.cube.y(), first, last);
}

SparseFamily generation_towers(int k, int max_generation) {
  SparseFamily all;
  const std::int64_t n = std::int64_t{1} << (2 * k);
  for (std::int64_t m = 1; m <= n; ++m) {
    SparseFamily t = build_tower(k, m, max_generation);
    for (std::size_t i = 0; i < t.size(); ++i) all.add(std::move(t.cubes[i]), std::move(t.witnesses[i]));
  }
  return all;
}

namespace {

// Morton order of lower-left corners (y bit above x bit at each depth), then level.
bool morton_less(const DyadicCube& a, const DyadicCube& b) {
  const std::int64_t lvl = std::max(a.level, b.level);
  const BigInt xa = a.ix << static_cast<mp_bitcnt_t>(lvl - a.level);
  const BigInt ya = a.iy << static_cast<mp_bitcnt_t>(lvl - a.level);
  const BigInt xb = b.ix << static_cast<mp_bitcnt_t>(lvl - b.level);
  const BigInt yb = b.iy << static_cast<mp_bitcnt_t>(lvl - b.level);
  const BigInt dx = xa ^ xb;
  const BigInt dy = ya ^ yb;
  if (sgn(dx) == 0 && sgn(dy) == 0) return a.level < b.level;
  const std::size_t bx = sgn(dx) == 0 ? 0 : mpz_sizeinbase(dx.get_mpz_t(), 2);
  const std::size_t by = sgn(dy) == 0 ? 0 : mpz_sizeinbase(dy.get_mpz_t(), 2);
  if (bx > by) return xa < xb;
  return ya < yb;
}

}  // namespace

SparseCertificate verify_sparse(const SparseFamily& fam) {
  SparseCertificate cert;
  if (fam.cubes.size() != fam.witnesses.size()) {
    cert.failure = "cube and witness counts differ";
    return cert;
  }
  const std::size_t n = fam.size();
  cert.ratios.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& q = fam.cubes[i];
    const auto& w = fam.witnesses[i];
    if (w.hole && (w.hole->level <= q.level || !q.contains(*w.hole))) {
      cert.failure = "witness hole of cube " + std::to_string(i) + " is not a strict subcube";
      cert.ratios.clear();
      return cert;
    }
    cert.ratios.push_back(w.area_ratio(q));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (cert.ratios[i] < Rational(1, 2)) {
      cert.failure = "witness of cube " + std::to_string(i) + " covers less than half of it";
      return cert;
    }
  }

  // Laminar sweep: after sorting, the cubes containing the current one form a chain on
  // the stack. Witnesses of A and B (B inside A) are disjoint iff B lies in A's hole;
  // checking the nearest container suffices since holes nest along the chain.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return morton_less(fam.cubes[a], fam.cubes[b]); });
  std::vector<std::size_t> stack;
  for (std::size_t idx : order) {
    const auto& q = fam.cubes[idx];
    while (!stack.empty() && !fam.cubes[stack.back()].contains(q)) stack.pop_back();
    if (!stack.empty()) {
      const std::size_t top = stack.back();
      const auto& hole = fam.witnesses[top].hole;
      if (!hole || !hole->contains(q)) {
        cert.failure = "witnesses of cubes " + std::to_string(top) + " and " + std::to_string(idx) + " overlap";
        return cert;
      }
    }
    stack.push_back(idx);
  }
  cert.valid = true;
  return cert;
}

CubeMass omega_mass() {
  return [](const DyadicCube& q) { return omega_cube(q).to_rational(); };
}

SparseSum sparse_partial_sum(const CubeMass& mu, const SparseFamily& fam, std::int64_t n) {
  const auto cert = verify_sparse(fam);
  if (!cert.valid) throw PreconditionError("family is not sparse: " + cert.failure);
  SparseSum s;
  for (const auto& q : fam.cubes) {
    if (q.level <= n) continue;
    const Rational m = mu(q);
    s.sum_squares += m * m;
    ++s.cubes_used;
  }
  s.value = ExtScalar::from_rational(s.sum_squares).sqrt();
  return s;
}

std::vector<GenerationContribution> divergence_profile(int K, int max_generation) {
  if (K < 1) throw DomainError("profile needs at least one generation");
  if (K > max_generation) {
    throw ResourceLimitError("profile depth " + std::to_string(K) + " exceeds max generation " +
                             std::to_string(max_generation));
  }
  std::vector<GenerationContribution> out;
  Rational cumulative = 0;
  for (int k = 1; k <= K; ++k) {
    const SparseFamily fam = generation_towers(k, max_generation);
    GenerationContribution g;
    g.k = k;
    for (const auto& q : fam.cubes) {
      const Rational m = omega_cube(q).to_rational();
      g.contribution += m * m;
    }
    g.cubes = static_cast<std::int64_t>(fam.size());
    cumulative += g.contribution;
    g.cumulative = cumulative;
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace cantorvort
