#include "cantorvort/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cantorvort/errors.hpp"

namespace cantorvort {

DyadicScalar AtomicMeasure::total_mass() const {
  DyadicScalar s;
  for (const auto& a : atoms) s += a.weight;
  return s;
}

DyadicScalar AtomicMeasure::mass(const DyadicCube& q) const {
  DyadicScalar s;
  for (const auto& a : atoms) {
    if (q.contains(a.x, a.y)) s += a.weight;
  }
  return s;
}

AtomicMeasure omega_k_measure(int k, int max_generation) {
  AtomicMeasure mu;
  const DyadicScalar w = DyadicScalar::pow2(-2 * k);
  for (auto& c : cantor_generation(k, max_generation)) mu.atoms.push_back({c.center_x, c.center_y, w});
  return mu;
}

AtomicMeasure point_mass(const DyadicScalar& x, const DyadicScalar& y, const DyadicScalar& weight) {
  if (weight.sign() <= 0) throw DomainError("atom weight must be positive");
  return AtomicMeasure{{Atom{x, y, weight}}};
}

DyadicScalar omega_k_cube(int k, const DyadicCube& q) {
  const DyadicScalar x = q.x();
  const DyadicScalar y = q.y();
  const DyadicScalar s = q.side();
  const std::int64_t nx = line::count_centers(k, x, x + s);
  if (nx == 0) return {};
  const std::int64_t ny = line::count_centers(k, y, y + s);
  return DyadicScalar(BigInt(static_cast<long>(nx * ny)), 2 * k);
}

int stabilization_generation(std::int64_t level) {
  if (level < 0) throw DomainError("negative level");
  int k = 0;
  while ((std::int64_t{1} << (2 * k)) < level + 1) ++k;
  return k;
}

DyadicScalar omega_cube(const DyadicCube& q) { return omega_k_cube(stabilization_generation(q.level), q); }

DyadicScalar omega_arbitrary_cube(const ArbitraryCube& q, int max_generation) {
  if (q.side.sign() <= 0) throw DomainError("side must be positive");
  // Every endpoint sits on the 2^-lev(k) grid once lev(k) reaches the finest denominator;
  // each generation-k interval is then inside the cube or disjoint from it.
  const std::int64_t need = std::max({q.x.exp2(), q.y.exp2(), (q.x + q.side).exp2(), (q.y + q.side).exp2(),
                                      std::int64_t{0}});
  int k = 0;
  while (cantor_level(k) < need) ++k;
  if (k > max_generation) {
    throw ResourceLimitError("cube resolution 2^-" + std::to_string(need) + " needs generation " +
                             std::to_string(k) + " > " + std::to_string(max_generation));
  }
  const std::int64_t nx = line::count_contained(k, q.x, q.x + q.side);
  if (nx == 0) return {};
  const std::int64_t ny = line::count_contained(k, q.y, q.y + q.side);
  return DyadicScalar(BigInt(static_cast<long>(nx * ny)), 2 * k);
}

// ---------------------------------------------------------------------------
// Morrey norms

namespace {

bool integer_alpha(const Rational& a) { return a.get_den() == 1 && sgn(a) >= 0; }

long double rational_ld(const Rational& q) { return to_long_double(q); }

}  // namespace

ExtScalar morrey_weight(std::int64_t level, const MorreyConfig& cfg) {
  if (auto e = morrey_weight_exact(level, cfg)) return ExtScalar::from_rational(*e);
  const long double lvl = static_cast<long double>(std::max<std::int64_t>(level, 0));
  const long double w = cfg.log_base == LogBase::Two ? 1.0L + 2.0L * lvl
                                                     : 1.0L + 2.0L * lvl * std::numbers::ln2_v<long double>;
  return ExtScalar::from_long_double(w).pow(rational_ld(cfg.alpha));
}

std::optional<Rational> morrey_weight_exact(std::int64_t level, const MorreyConfig& cfg) {
  if (cfg.log_base != LogBase::Two || !integer_alpha(cfg.alpha)) return std::nullopt;
  const long base = 1 + 2 * static_cast<long>(std::max<std::int64_t>(level, 0));
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), mpz_get_ui(cfg.alpha.get_num_mpz_t()));
  return Rational(r);
}

void absorb_level(MorreyReport& report, LevelMax lm) {
  bool better;
  if (report.per_level_max.empty()) {
    better = true;
  } else if (report.exact && lm.exact) {
    better = *lm.exact > *report.exact;
  } else {
    better = lm.value > report.norm_value;
  }
  if (better) {
    report.norm_value = lm.value;
    report.exact = lm.exact;
    report.argmax = lm.cube;
  }
  report.per_level_max.push_back(std::move(lm));
}

MorreyReport morrey_log_norm(const AtomicMeasure& mu, const MorreyConfig& cfg) {
  if (cfg.max_level < 1) throw DomainError("max_level must be at least 1");
  if (cfg.min_level < 0 || cfg.min_level > cfg.max_level) throw DomainError("bad level range");
  if (sgn(cfg.alpha) < 0) throw DomainError("alpha must be nonnegative");

  const std::size_t n = mu.atoms.size();
  std::int64_t grid = cfg.max_level;
  bool uniform = true;
  for (const auto& a : mu.atoms) {
    grid = std::max({grid, a.x.exp2(), a.y.exp2()});
    if (a.weight.sign() <= 0) throw DomainError("atomic measure with non-positive weight");
    if (!(a.weight == mu.atoms.front().weight)) uniform = false;
  }
  std::vector<BigInt> gx(n);
  std::vector<BigInt> gy(n);
  for (std::size_t i = 0; i < n; ++i) {
    gx[i] = mu.atoms[i].x.to_grid(grid);
    gy[i] = mu.atoms[i].y.to_grid(grid);
    const BigInt lim = pow2_int(grid);
    if (sgn(gx[i]) < 0 || sgn(gy[i]) < 0 || gx[i] >= lim || gy[i] >= lim) {
      throw DomainError("atom outside the unit square");
    }
  }

  // Nodes of one level, as ranges of `order`, kept in address (Morton) order.
  struct Node {
    std::size_t begin;
    std::size_t end;
  };
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<std::size_t> scratch(n);
  std::vector<Node> nodes;
  if (n > 0) nodes.push_back({0, n});

  auto node_mass = [&](const Node& nd) -> Rational {
    if (uniform) return mu.atoms.front().weight.to_rational() * Rational(static_cast<long>(nd.end - nd.begin));
    DyadicScalar s;
    for (std::size_t i = nd.begin; i < nd.end; ++i) s += mu.atoms[order[i]].weight;
    return s.to_rational();
  };

  MorreyReport report;
  for (std::int64_t level = 0; level <= cfg.max_level; ++level) {
    if (level > 0) {
      const auto bit = static_cast<mp_bitcnt_t>(grid - level);
      std::vector<Node> next;
      next.reserve(nodes.size() * 2);
      for (const Node& nd : nodes) {
        std::size_t counts[4] = {0, 0, 0, 0};
        for (std::size_t i = nd.begin; i < nd.end; ++i) {
          const std::size_t a = order[i];
          const int q = mpz_tstbit(gx[a].get_mpz_t(), bit) | (mpz_tstbit(gy[a].get_mpz_t(), bit) << 1);
          ++counts[q];
        }
        std::size_t start[4];
        start[0] = nd.begin;
        for (int q = 1; q < 4; ++q) start[q] = start[q - 1] + counts[q - 1];
        std::size_t fill[4] = {start[0], start[1], start[2], start[3]};
        for (std::size_t i = nd.begin; i < nd.end; ++i) {
          const std::size_t a = order[i];
          const int q = mpz_tstbit(gx[a].get_mpz_t(), bit) | (mpz_tstbit(gy[a].get_mpz_t(), bit) << 1);
          scratch[fill[q]++] = a;
        }
        std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(nd.begin),
                  scratch.begin() + static_cast<std::ptrdiff_t>(nd.end),
                  order.begin() + static_cast<std::ptrdiff_t>(nd.begin));
        for (int q = 0; q < 4; ++q) {
          if (counts[q] > 0) next.push_back({start[q], start[q] + counts[q]});
        }
      }
      nodes.swap(next);
    }
    if (level < cfg.min_level) continue;

    LevelMax lm;
    lm.level = level;
    if (nodes.empty()) {
      lm.mass = 0;
    } else {
      const Node* best = &nodes.front();
      if (uniform) {
        for (const Node& nd : nodes) {
          if (nd.end - nd.begin > best->end - best->begin) best = &nd;
        }
        lm.mass = node_mass(*best);
      } else {
        lm.mass = node_mass(*best);
        for (const Node& nd : nodes) {
          Rational m = node_mass(nd);
          if (m > lm.mass) {
            lm.mass = m;
            best = &nd;
          }
        }
      }
      const std::size_t a = order[best->begin];
      lm.cube.level = level;
      const auto shift = static_cast<mp_bitcnt_t>(grid - level);
      mpz_fdiv_q_2exp(lm.cube.ix.get_mpz_t(), gx[a].get_mpz_t(), shift);
      mpz_fdiv_q_2exp(lm.cube.iy.get_mpz_t(), gy[a].get_mpz_t(), shift);
    }
    if (auto w = morrey_weight_exact(level, cfg)) {
      lm.exact = *w * lm.mass;
      lm.value = ExtScalar::from_rational(*lm.exact);
    } else {
      lm.value = morrey_weight(level, cfg) * ExtScalar::from_rational(lm.mass);
    }
    absorb_level(report, std::move(lm));
  }
  return report;
}

MorreyReport morrey_log_norm_omega(const MorreyConfig& cfg) {
  const int k = stabilization_generation(cfg.max_level);
  return morrey_log_norm(omega_k_measure(k, std::max(k, kDefaultMaxGeneration)), cfg);
}

}  // namespace cantorvort
