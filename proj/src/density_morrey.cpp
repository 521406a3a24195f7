#include <algorithm>
#include <cmath>
#include <string>

#include "cantorvort/disk_area.hpp"
#include "cantorvort/errors.hpp"
#include "cantorvort/vortex.hpp"

namespace cantorvort {

RadialDensity patch_density(const PatchParams& p) {
  RadialDensity d;
  for (const auto& c : cantor_generation(p.k, std::max(p.k, kDefaultMaxGeneration))) {
    d.centers.push_back({c.center_x.to_rational(), c.center_y.to_rational()});
  }
  const Rational minus = -p.omega_minus_pi;
  d.bands.push_back({0, p.delta2(), p.omega_plus().to_long_double(), p.omega_plus_pi});
  d.bands.push_back({p.delta, p.r2, (-p.omega_minus()).to_long_double(), minus});
  return d;
}

namespace {

Rational max_outer2(const RadialDensity& d) {
  Rational m = 0;
  for (const auto& b : d.bands) m = std::max(m, b.outer2);
  return m;
}

}  // namespace

namespace {

struct CubeGeometry {
  Rational x;
  Rational y;
  Rational s;
  Rational s2;
};

CubeGeometry geometry(const DyadicCube& q) {
  CubeGeometry g{q.x().to_rational(), q.y().to_rational(), q.side().to_rational(), 0};
  g.s2 = g.s * g.s;
  return g;
}

}  // namespace

CubeMassBounds density_cube_mass(const RadialDensity& d, const DyadicCube& q) {
  const CubeGeometry g = geometry(q);
  const Rational reach = max_outer2(d);
  const long double s2 = to_long_double(g.s2);
  CubeMassBounds out;
  std::array<Rational, 2> exact{Rational(0), Rational(0)};
  bool is_exact = true;
  for (const auto& c : d.centers) {
    const Rational near = square_nearest_d2(c.x, c.y, g.x, g.y, g.s);
    if (near >= reach) continue;
    const Rational far = square_farthest_d2(c.x, c.y, g.x, g.y, g.s);
    for (const auto& band : d.bands) {
      if (near >= band.outer2 || far <= band.inner2) continue;
      if (near >= band.inner2 && far <= band.outer2) {
        // Whole square inside the band; no cancellation between the two disks.
        out.value += band.density * s2;
        if (band.density_pi) {
          exact[0] += *band.density_pi * g.s2;
        } else {
          is_exact = false;
        }
        continue;
      }
      auto piece = [&](const Rational& r2, int sign) {
        if (sgn(r2) == 0) return;
        const DiskSquareArea a = disk_square_area(c.x, c.y, r2, g.x, g.y, g.s);
        out.value += sign * band.density * a.value;
        out.error += band.density * a.error;
        if (a.kind == Overlap::Disjoint) return;
        if (!band.density_pi) {
          is_exact = false;
          return;
        }
        switch (a.kind) {
          case Overlap::Disjoint: break;
          case Overlap::SquareInDisk: exact[0] += sign * *band.density_pi * g.s2; break;
          case Overlap::DiskInSquare: exact[1] += sign * *band.density_pi * r2; break;
          case Overlap::Straddle: is_exact = false; break;
        }
      };
      piece(band.outer2, 1);
      piece(band.inner2, -1);
    }
  }
  if (out.value < 0.0L) out.value = 0.0L;
  if (is_exact) out.exact = exact;
  return out;
}

namespace {

long double density_sup(const RadialDensity& d, const DyadicCube& q, const Rational& reach) {
  const CubeGeometry g = geometry(q);
  long double sup = 0.0L;
  for (const auto& c : d.centers) {
    const Rational near = square_nearest_d2(c.x, c.y, g.x, g.y, g.s);
    if (near >= reach) continue;
    const Rational far = square_farthest_d2(c.x, c.y, g.x, g.y, g.s);
    for (const auto& band : d.bands) {
      if (near < band.outer2 && far > band.inner2) sup = std::max(sup, band.density);
    }
  }
  return sup;
}

struct Best {
  bool found = false;
  DyadicCube cube;
  CubeMassBounds mass;
  long double lo = 0.0L;  // certified lower bound for the level maximum
};

}  // namespace

MorreyReport density_morrey(const RadialDensity& d, const MorreyConfig& cfg) {
  if (cfg.max_level < 1) throw DomainError("max_level must be at least 1");
  if (cfg.min_level < 0 || cfg.min_level > cfg.max_level) throw DomainError("bad level range");
  if (sgn(cfg.alpha) < 0) throw DomainError("alpha must be nonnegative");
  if (cfg.max_level > 8000) throw ResourceLimitError("max_level beyond the extended float range");
  const std::int64_t top = cfg.max_level;
  const Rational reach = max_outer2(d);
  std::vector<Best> best(static_cast<std::size_t>(top + 1));

  // Depth-first in SW, SE, NW, NE order visits each level in Morton order,
  // so strict improvement keeps the first maximizer.
  std::vector<DyadicCube> stack{DyadicCube::unit()};
  while (!stack.empty()) {
    DyadicCube q = std::move(stack.back());
    stack.pop_back();
    const CubeMassBounds m = density_cube_mass(d, q);
    if (q.level >= cfg.min_level) {
      Best& b = best[static_cast<std::size_t>(q.level)];
      if (!b.found || m.value > b.mass.value) {
        b.found = true;
        b.cube = q;
        b.mass = m;
        b.lo = std::max(0.0L, m.value - m.error);
      }
    }
    if (q.level == top) continue;
    const long double hi = m.value + m.error;
    if (hi <= 0.0L) continue;
    const long double sup = density_sup(d, q, reach);
    bool useful = false;
    for (std::int64_t lvl = std::max(q.level + 1, cfg.min_level); lvl <= top && !useful; ++lvl) {
      const long double bound = std::min(hi, sup * std::ldexp(1.0L, static_cast<int>(-2 * lvl)));
      const Best& b = best[static_cast<std::size_t>(lvl)];
      useful = !b.found || bound > b.lo;
    }
    if (!useful) continue;
    for (int c = 3; c >= 0; --c) stack.push_back(q.child(c));
  }

  MorreyReport report;
  for (std::int64_t lvl = cfg.min_level; lvl <= top; ++lvl) {
    const Best& b = best[static_cast<std::size_t>(lvl)];
    LevelMax lm;
    lm.level = lvl;
    if (!b.found) {
      lm.cube = DyadicCube{lvl, 0, 0};
      lm.mass = 0;
      lm.exact = morrey_weight_exact(lvl, cfg).has_value() ? std::optional<Rational>(0) : std::nullopt;
      absorb_level(report, std::move(lm));
      continue;
    }
    lm.cube = b.cube;
    const bool rational_mass = b.mass.exact && sgn((*b.mass.exact)[0]) == 0;
    if (rational_mass) {
      lm.mass = (*b.mass.exact)[1];
    } else {
      lm.mass = rational_from(b.mass.value);
      lm.mass_error = b.mass.error;
    }
    const auto w = morrey_weight_exact(lvl, cfg);
    if (w && rational_mass) {
      lm.exact = *w * lm.mass;
      lm.value = ExtScalar::from_rational(*lm.exact);
    } else {
      lm.value = morrey_weight(lvl, cfg) * ExtScalar::from_long_double(b.mass.value);
    }
    absorb_level(report, std::move(lm));
  }
  return report;
}

MorreyReport density_morrey_norm(const PatchParams& p, const MorreyConfig& cfg) {
  const std::int64_t limit = 4 * (std::int64_t{1} << (2 * (p.k + 1)));
  if (cfg.max_level > limit) {
    throw PreconditionError("max_level " + std::to_string(cfg.max_level) + " exceeds 4 * 4^(k+1) = " +
                            std::to_string(limit));
  }
  return density_morrey(patch_density(p), cfg);
}

MorreyReport dm_scaling_morrey(const DyadicScalar& eps, const Rational& alpha) {
  const Rational e = eps.to_rational();
  if (sgn(e) <= 0 || e >= 1) throw DomainError("eps must lie in (0, 1)");
  const long double log_inv = -std::log2(to_long_double(e));
  if (!(log_inv > 0.0L)) throw DomainError("eps too close to 1");
  const Rational half(1, 2);
  RadialDensity d;
  d.centers.push_back({half, half});
  const long double prefactor = 1.0L / std::sqrt(log_inv);
  d.bands.push_back({0, e * e, prefactor / to_long_double(e * e), std::nullopt});
  MorreyConfig cfg;
  cfg.alpha = alpha;
  cfg.log_base = LogBase::Two;
  cfg.min_level = 0;
  cfg.max_level = 2 * static_cast<std::int64_t>(std::ceil(log_inv)) + 10;
  return density_morrey(d, cfg);
}

}  // namespace cantorvort
