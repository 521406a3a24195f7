#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace cantorvort {

using BigInt = mpz_class;
using Rational = mpq_class;

/// 2^e as a big integer, e >= 0.
BigInt pow2_int(std::int64_t e);

/// 2^e as an exact rational; e may be negative.
Rational pow2_rational(std::int64_t e);

/// Correctly truncated conversion to long double, valid far outside the
/// double range. Returns +-inf / 0 only when the long double range is exceeded.
long double to_long_double(const Rational& q);

/// Exact value of a finite long double.
Rational rational_from(long double v);

/// floor(log2|q|) for q != 0.
std::int64_t floor_log2(const Rational& q);

/// Rational rendered as "p/q", or "p" when the denominator is 1.
std::string rational_string(const Rational& q);

/// Plain decimal rendering with `digits` significant digits ("0.1875").
std::string decimal_string(const Rational& q, int digits = 17);

/// Parses "p/q", integers and finite decimals such as "0.01" exactly.
Rational parse_rational(const std::string& text);

/// Exact dyadic rational mantissa * 2^-exp2.
///
/// Canonical form keeps the mantissa odd (or zero with exp2 == 0), so two
/// equal values always have identical representations.
class DyadicScalar {
 public:
  DyadicScalar() = default;
  DyadicScalar(long value);  // NOLINT(google-explicit-constructor)
  DyadicScalar(BigInt mantissa, std::int64_t exp2);

  /// 2^e.
  static DyadicScalar pow2(std::int64_t e);
  /// n * 2^-level for an integer grid index.
  static DyadicScalar grid(const BigInt& index, std::int64_t level);
  /// Exact conversion; throws DomainError if q is not dyadic.
  static DyadicScalar from_rational(const Rational& q);

  const BigInt& mantissa() const { return mantissa_; }
  std::int64_t exp2() const { return exp2_; }
  bool is_zero() const { return sgn(mantissa_) == 0; }
  int sign() const { return sgn(mantissa_); }

  /// value * 2^shift.
  DyadicScalar scaled(std::int64_t shift) const;
  /// value * 2^scale as an integer; throws DomainError if not integral.
  BigInt to_grid(std::int64_t scale) const;
  /// floor(value * 2^scale).
  BigInt floor_grid(std::int64_t scale) const;

  Rational to_rational() const;
  long double to_long_double() const;
  std::string to_string() const { return rational_string(to_rational()); }

  DyadicScalar operator-() const;
  friend DyadicScalar operator+(const DyadicScalar& a, const DyadicScalar& b);
  friend DyadicScalar operator-(const DyadicScalar& a, const DyadicScalar& b);
  friend DyadicScalar operator*(const DyadicScalar& a, const DyadicScalar& b);
  DyadicScalar& operator+=(const DyadicScalar& b) { return *this = *this + b; }
  DyadicScalar& operator-=(const DyadicScalar& b) { return *this = *this - b; }

  friend bool operator==(const DyadicScalar& a, const DyadicScalar& b) {
    return a.exp2_ == b.exp2_ && a.mantissa_ == b.mantissa_;
  }
  friend std::strong_ordering operator<=>(const DyadicScalar& a, const DyadicScalar& b);

 private:
  void normalize();

  BigInt mantissa_{0};
  std::int64_t exp2_ = 0;
};

}  // namespace cantorvort
