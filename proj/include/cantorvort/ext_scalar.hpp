#pragma once

#include <cstdint>
#include <string>

#include "cantorvort/dyadic.hpp"

namespace cantorvort {

/// sign * mantissa * 2^exp2 with mantissa in [1,2) and a 64-bit exponent.
/// Covers magnitudes such as 2^-131072 that no hardware float can hold.
class ExtScalar {
 public:
  ExtScalar() = default;

  static ExtScalar from_long_double(long double v);
  static ExtScalar from_rational(const Rational& q);
  static ExtScalar from_dyadic(const DyadicScalar& d) { return from_rational(d.to_rational()); }
  /// The positive value 2^l.
  static ExtScalar from_log2(long double l);
  static ExtScalar pow2(std::int64_t e);

  int sign() const { return sign_; }
  double mantissa() const { return mantissa_; }
  std::int64_t exp2() const { return exp2_; }
  bool is_zero() const { return sign_ == 0; }

  /// log2|x|; -inf for zero.
  long double log2() const;
  /// Saturates to +-inf or 0 outside the long double range.
  long double to_long_double() const;

  ExtScalar abs() const;
  ExtScalar sqrt() const;
  /// |x|^p for x > 0 (sign ignored).
  ExtScalar pow(long double p) const;

  ExtScalar operator-() const;
  friend ExtScalar operator+(const ExtScalar& a, const ExtScalar& b);
  friend ExtScalar operator-(const ExtScalar& a, const ExtScalar& b) { return a + (-b); }
  friend ExtScalar operator*(const ExtScalar& a, const ExtScalar& b);
  friend ExtScalar operator/(const ExtScalar& a, const ExtScalar& b);

  friend bool operator==(const ExtScalar& a, const ExtScalar& b) {
    return a.sign_ == b.sign_ && a.mantissa_ == b.mantissa_ && a.exp2_ == b.exp2_;
  }
  friend bool operator<(const ExtScalar& a, const ExtScalar& b);
  friend bool operator>(const ExtScalar& a, const ExtScalar& b) { return b < a; }
  friend bool operator<=(const ExtScalar& a, const ExtScalar& b) { return !(b < a); }
  friend bool operator>=(const ExtScalar& a, const ExtScalar& b) { return !(a < b); }

  /// "+1.5*2^-3", "0" for zero.
  std::string to_string() const;
  /// "log2=5.10e2" (two decimals, bare exponent); "log2=-inf" for zero.
  std::string log2_string() const;
  /// Ordinary scientific rendering when representable, else the log2 form.
  std::string decimal_string(int digits = 17) const;

 private:
  static ExtScalar make(int sign, long double m, std::int64_t e);

  int sign_ = 0;
  double mantissa_ = 0.0;
  std::int64_t exp2_ = 0;
};

/// Formats x in the log2 domain: "log2=" + 3 significant digits.
std::string log2_domain_string(long double log2_value);

}  // namespace cantorvort
