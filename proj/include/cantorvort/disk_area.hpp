#pragma once

#include "cantorvort/dyadic.hpp"

namespace cantorvort {

enum class Overlap { Disjoint, SquareInDisk, DiskInSquare, Straddle };

/// Area of (closed disk) ∩ (square), with an absolute error bound.
/// Disjoint and containment cases are decided exactly; the value is then exact too
/// (0, side^2 or pi r^2 up to the rounding of pi).
struct DiskSquareArea {
  Overlap kind = Overlap::Disjoint;
  long double value = 0.0L;
  long double error = 0.0L;

  long double lo() const;
  long double hi() const;
};

/// Disk with center (cx, cy) and squared radius r2; square [x, x+side] x [y, y+side].
DiskSquareArea disk_square_area(const Rational& cx, const Rational& cy, const Rational& r2, const Rational& x,
                                const Rational& y, const Rational& side);

/// Squared distance from (cx, cy) to the nearest / farthest point of the square.
Rational square_nearest_d2(const Rational& cx, const Rational& cy, const Rational& x, const Rational& y,
                           const Rational& side);
Rational square_farthest_d2(const Rational& cx, const Rational& cy, const Rational& x, const Rational& y,
                            const Rational& side);

/// Exact classification only.
Overlap classify_disk_square(const Rational& cx, const Rational& cy, const Rational& r2, const Rational& x,
                             const Rational& y, const Rational& side);

}  // namespace cantorvort
