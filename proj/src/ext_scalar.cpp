#include "cantorvort/ext_scalar.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "cantorvort/errors.hpp"

namespace cantorvort {

ExtScalar ExtScalar::make(int sign, long double m, std::int64_t e) {
  ExtScalar r;
  if (sign == 0 || m == 0.0L) return r;
  if (!std::isfinite(m)) throw DomainError("ExtScalar: non-finite mantissa");
  int shift = 0;
  const long double f = std::frexp(m, &shift);  // m = f * 2^shift, f in [0.5, 1)
  r.sign_ = sign;
  r.mantissa_ = static_cast<double>(f * 2.0L);
  r.exp2_ = e + shift - 1;
  if (r.mantissa_ >= 2.0) {  // rounding to double can reach 2
    r.mantissa_ /= 2.0;
    ++r.exp2_;
  }
  return r;
}

ExtScalar ExtScalar::from_long_double(long double v) {
  if (v == 0.0L) return {};
  return make(v < 0 ? -1 : 1, std::fabs(v), 0);
}

ExtScalar ExtScalar::from_rational(const Rational& q) {
  if (sgn(q) == 0) return {};
  const std::int64_t e = floor_log2(q);
  Rational scaled = q;
  if (sgn(scaled) < 0) scaled = -scaled;
  if (e > 0) {
    scaled /= Rational(pow2_int(e));
  } else if (e < 0) {
    scaled *= Rational(pow2_int(-e));
  }
  return make(sgn(q), cantorvort::to_long_double(scaled), e);
}

ExtScalar ExtScalar::from_log2(long double l) {
  if (!std::isfinite(l)) throw DomainError("ExtScalar::from_log2: non-finite exponent");
  const long double fl = std::floor(l);
  return make(1, std::exp2(l - fl), static_cast<std::int64_t>(fl));
}

ExtScalar ExtScalar::pow2(std::int64_t e) {
  ExtScalar r;
  r.sign_ = 1;
  r.mantissa_ = 1.0;
  r.exp2_ = e;
  return r;
}

long double ExtScalar::log2() const {
  if (sign_ == 0) return -std::numeric_limits<long double>::infinity();
  return static_cast<long double>(exp2_) + std::log2(static_cast<long double>(mantissa_));
}

long double ExtScalar::to_long_double() const {
  if (sign_ == 0) return 0.0L;
  constexpr std::int64_t kLimit = 20000;
  if (exp2_ > kLimit) return sign_ * std::numeric_limits<long double>::infinity();
  if (exp2_ < -kLimit) return sign_ * 0.0L;
  return sign_ * std::ldexp(static_cast<long double>(mantissa_), static_cast<int>(exp2_));
}

ExtScalar ExtScalar::abs() const {
  ExtScalar r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

ExtScalar ExtScalar::sqrt() const {
  if (sign_ < 0) throw DomainError("ExtScalar::sqrt of a negative value");
  if (sign_ == 0) return {};
  long double m = mantissa_;
  std::int64_t e = exp2_;
  if (e % 2 != 0) {
    m *= 2.0L;
    e -= 1;
  }
  return make(1, std::sqrt(m), e / 2);
}

ExtScalar ExtScalar::pow(long double p) const {
  if (sign_ == 0) {
    if (p == 0.0L) return from_long_double(1.0L);
    return {};
  }
  return from_log2(p * log2());
}

ExtScalar ExtScalar::operator-() const {
  ExtScalar r = *this;
  r.sign_ = -r.sign_;
  return r;
}

ExtScalar operator+(const ExtScalar& a, const ExtScalar& b) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  const ExtScalar& big = (a.exp2_ >= b.exp2_) ? a : b;
  const ExtScalar& small = (a.exp2_ >= b.exp2_) ? b : a;
  const std::int64_t gap = big.exp2_ - small.exp2_;
  if (gap > 70) return big;
  const long double v = big.sign_ * static_cast<long double>(big.mantissa_) +
                        small.sign_ * std::ldexp(static_cast<long double>(small.mantissa_), -static_cast<int>(gap));
  if (v == 0.0L) return {};
  return ExtScalar::make(v < 0 ? -1 : 1, std::fabs(v), big.exp2_);
}

ExtScalar operator*(const ExtScalar& a, const ExtScalar& b) {
  if (a.sign_ == 0 || b.sign_ == 0) return {};
  return ExtScalar::make(a.sign_ * b.sign_,
                         static_cast<long double>(a.mantissa_) * static_cast<long double>(b.mantissa_),
                         a.exp2_ + b.exp2_);
}

ExtScalar operator/(const ExtScalar& a, const ExtScalar& b) {
  if (b.sign_ == 0) throw DomainError("ExtScalar division by zero");
  if (a.sign_ == 0) return {};
  return ExtScalar::make(a.sign_ * b.sign_,
                         static_cast<long double>(a.mantissa_) / static_cast<long double>(b.mantissa_),
                         a.exp2_ - b.exp2_);
}

bool operator<(const ExtScalar& a, const ExtScalar& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  if (a.sign_ == 0) return false;
  bool mag_less;
  if (a.exp2_ != b.exp2_) {
    mag_less = a.exp2_ < b.exp2_;
  } else {
    mag_less = a.mantissa_ < b.mantissa_;
  }
  const bool mag_equal = a.exp2_ == b.exp2_ && a.mantissa_ == b.mantissa_;
  if (mag_equal) return false;
  return a.sign_ > 0 ? mag_less : !mag_less;
}

std::string ExtScalar::to_string() const {
  if (sign_ == 0) return "0";
  char buf[96];
  std::snprintf(buf, sizeof buf, "%c%.17g*2^%lld", sign_ < 0 ? '-' : '+', mantissa_,
                static_cast<long long>(exp2_));
  return buf;
}

std::string log2_domain_string(long double log2_value) {
  if (std::isinf(log2_value)) return log2_value < 0 ? "log2=-inf" : "log2=inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2Le", log2_value);
  // "5.10e+02" -> "5.10e2", "-8.65e+00" -> "-8.65e0"
  std::string s(buf);
  const auto epos = s.find('e');
  std::string mant = s.substr(0, epos);
  std::string ex = s.substr(epos + 1);
  bool neg = false;
  if (!ex.empty() && (ex[0] == '+' || ex[0] == '-')) {
    neg = ex[0] == '-';
    ex.erase(0, 1);
  }
  while (ex.size() > 1 && ex[0] == '0') ex.erase(0, 1);
  return "log2=" + mant + "e" + (neg ? "-" : "") + ex;
}

std::string ExtScalar::log2_string() const { return log2_domain_string(log2()); }

std::string ExtScalar::decimal_string(int digits) const {
  if (sign_ == 0) return "0";
  if (exp2_ > 16000 || exp2_ < -16000) return log2_string();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, to_long_double());
  return buf;
}

}  // namespace cantorvort
