#include "cantorvort/disk_area.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "cantorvort/errors.hpp"

namespace cantorvort {

long double DiskSquareArea::lo() const { return std::max(0.0L, value - error); }
long double DiskSquareArea::hi() const { return value + error; }

namespace {

Rational sq(const Rational& a) { return a * a; }

Rational nearest_d2(const Rational& cx, const Rational& cy, const Rational& x, const Rational& y,
                    const Rational& side) {
  auto gap = [](const Rational& c, const Rational& lo, const Rational& hi) -> Rational {
    if (c < lo) return lo - c;
    if (c > hi) return c - hi;
    return 0;
  };
  return sq(gap(cx, x, x + side)) + sq(gap(cy, y, y + side));
}

Rational farthest_d2(const Rational& cx, const Rational& cy, const Rational& x, const Rational& y,
                     const Rational& side) {
  auto far = [](const Rational& c, const Rational& lo, const Rational& hi) -> Rational {
    Rational a = c - lo;
    Rational b = hi - c;
    if (sgn(a) < 0) a = -a;
    if (sgn(b) < 0) b = -b;
    return a > b ? a : b;
  };
  return sq(far(cx, x, x + side)) + sq(far(cy, y, y + side));
}

long double ld(const Rational& q) { return to_long_double(q); }

// (theta - sin theta) / 2 without cancellation for small angles.
long double segment_factor(long double theta) {
  if (theta < 1e-2L) {
    const long double t2 = theta * theta;
    // theta^3/6 - theta^5/120 + theta^7/5040 - theta^9/362880
    const long double s = theta * t2 / 6.0L * (1.0L - t2 / 20.0L * (1.0L - t2 / 42.0L * (1.0L - t2 / 72.0L)));
    return s / 2.0L;
  }
  return (theta - std::sin(theta)) / 2.0L;
}

struct Vertex {
  long double u;
  long double v;
  long double perimeter;  // edge index + parameter
};

}  // namespace

Rational square_nearest_d2(const Rational& cx, const Rational& cy, const Rational& x, const Rational& y,
                           const Rational& side) {
  return nearest_d2(cx, cy, x, y, side);
}

Rational square_farthest_d2(const Rational& cx, const Rational& cy, const Rational& x, const Rational& y,
                            const Rational& side) {
  return farthest_d2(cx, cy, x, y, side);
}

Overlap classify_disk_square(const Rational& cx, const Rational& cy, const Rational& r2, const Rational& x,
                             const Rational& y, const Rational& side) {
  if (sgn(side) <= 0) throw DomainError("square side must be positive");
  if (sgn(r2) <= 0) throw DomainError("squared radius must be positive");
  if (nearest_d2(cx, cy, x, y, side) >= r2) return Overlap::Disjoint;
  if (farthest_d2(cx, cy, x, y, side) <= r2) return Overlap::SquareInDisk;
  if (cx - x >= 0 && x + side - cx >= 0 && cy - y >= 0 && y + side - cy >= 0 && sq(cx - x) >= r2 &&
      sq(x + side - cx) >= r2 && sq(cy - y) >= r2 && sq(y + side - cy) >= r2) {
    return Overlap::DiskInSquare;
  }
  return Overlap::Straddle;
}

DiskSquareArea disk_square_area(const Rational& cx, const Rational& cy, const Rational& r2, const Rational& x,
                                const Rational& y, const Rational& side) {
  DiskSquareArea out;
  out.kind = classify_disk_square(cx, cy, r2, x, y, side);
  const long double pi = std::numbers::pi_v<long double>;
  switch (out.kind) {
    case Overlap::Disjoint:
      return out;
    case Overlap::SquareInDisk:
      out.value = ld(sq(side));
      return out;
    case Overlap::DiskInSquare:
      out.value = pi * ld(r2);
      out.error = out.value * 1e-18L;
      return out;
    case Overlap::Straddle:
      break;
  }

  // Local frame: square -> [0,1]^2, everything below is exact until the roots.
  const Rational ccx = (cx - x) / side;
  const Rational ccy = (cy - y) / side;
  const Rational rho2 = r2 / sq(side);
  const Rational px[4] = {0, 1, 1, 0};
  const Rational py[4] = {0, 0, 1, 1};
  const int dx[4] = {1, 0, -1, 0};
  const int dy[4] = {0, 1, 0, -1};
  Rational k[4];
  for (int i = 0; i < 4; ++i) k[i] = sq(px[i] - ccx) + sq(py[i] - ccy) - rho2;

  std::vector<Vertex> verts;
  for (int i = 0; i < 4; ++i) {
    const int j = (i + 1) % 4;
    if (sgn(k[i]) <= 0) verts.push_back({ld(px[i]), ld(py[i]), static_cast<long double>(i)});
    // |P_i + t d - C|^2 - rho^2 = t^2 + 2 beta t + K_i
    const Rational beta = (px[i] - ccx) * dx[i] + (py[i] - ccy) * dy[i];
    const Rational disc = sq(beta) - k[i];
    if (sgn(disc) <= 0) continue;
    long double roots[2];
    int nroots = 0;
    if (sgn(k[i]) == 0) {
      roots[nroots++] = -2.0L * ld(beta);  // other root is t = 0
    } else if (sgn(k[j]) == 0) {
      roots[nroots++] = ld(k[i]);  // other root is t = 1, product of roots is K_i
    } else {
      const long double b = ld(beta);
      const long double sd = std::sqrt(ld(disc));
      const long double q = -(b + (b >= 0 ? sd : -sd));
      roots[nroots++] = q;
      roots[nroots++] = ld(k[i]) / q;
    }
    std::sort(roots, roots + nroots);
    for (int r = 0; r < nroots; ++r) {
      const long double t = roots[r];
      if (!(t > 0.0L && t < 1.0L)) continue;
      verts.push_back({ld(px[i]) + t * dx[i], ld(py[i]) + t * dy[i], i + t});
    }
  }

  const long double rc = std::sqrt(ld(rho2));
  const long double ucx = ld(ccx);
  const long double ucy = ld(ccy);
  long double area = 0.0L;
  const std::size_t n = verts.size();
  for (std::size_t a = 0; a < n; ++a) {
    const Vertex& p = verts[a];
    const Vertex& q = verts[(a + 1) % n];
    area += (p.u * q.v - q.u * p.v) / 2.0L;
    // The square boundary from p to q is inside the disk unless it passes a corner
    // (which is then outside); in that case the region boundary is the arc.
    long double span = q.perimeter - p.perimeter;
    if (span <= 0.0L) span += 4.0L;
    const long double next_corner = std::floor(p.perimeter) + 1.0L;
    const bool passes_corner = p.perimeter + span > next_corner;
    if (n == 1 || passes_corner) {
      const long double chord = std::hypot(q.u - p.u, q.v - p.v);
      long double theta = 2.0L * std::asin(std::min(1.0L, chord / (2.0L * rc)));
      const long double cross = (q.u - p.u) * (ucy - p.v) - (q.v - p.v) * (ucx - p.u);
      if (cross < 0.0L) theta = 2.0L * pi - theta;
      area += ld(rho2) * segment_factor(theta);
    }
  }
  const long double s2 = ld(sq(side));
  out.value = std::clamp(area, 0.0L, 1.0L) * s2;
  out.error = 1e-15L * s2;
  return out;
}

}  // namespace cantorvort
