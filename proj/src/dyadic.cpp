#include "cantorvort/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

#include "cantorvort/errors.hpp"

namespace cantorvort {

BigInt pow2_int(std::int64_t e) {
  if (e < 0) throw DomainError("pow2_int: negative exponent");
  BigInt r;
  mpz_setbit(r.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  return r;
}

Rational pow2_rational(std::int64_t e) {
  Rational q;
  if (e >= 0) {
    q = Rational(pow2_int(e));
  } else {
    q = Rational(BigInt(1), pow2_int(-e));
  }
  return q;
}

namespace {

std::int64_t bit_length(const BigInt& n) {
  if (sgn(n) == 0) return 0;
  return static_cast<std::int64_t>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

}  // namespace

std::int64_t floor_log2(const Rational& q) {
  if (sgn(q) == 0) throw DomainError("floor_log2 of zero");
  BigInt num = abs(q.get_num());
  const BigInt& den = q.get_den();
  std::int64_t e = bit_length(num) - bit_length(den);
  // 2^e <= |q| < 2^(e+1) up to one step of correction.
  Rational a(num, den);
  if (a < pow2_rational(e)) --e;
  return e;
}

long double to_long_double(const Rational& q) {
  if (sgn(q) == 0) return 0.0L;
  const std::int64_t e = floor_log2(q);
  // |q| * 2^(63 - e) lies in [2^63, 2^64): take its integer part.
  BigInt num = abs(q.get_num());
  BigInt den = q.get_den();
  const std::int64_t shift = 63 - e;
  if (shift >= 0) {
    num <<= static_cast<mp_bitcnt_t>(shift);
  } else {
    den <<= static_cast<mp_bitcnt_t>(-shift);
  }
  BigInt top = num / den;
  // 64 bits of mantissa; long double carries exactly 64.
  long double m = static_cast<long double>(mpz_get_ui(BigInt(top >> 32).get_mpz_t())) * 4294967296.0L +
                  static_cast<long double>(mpz_get_ui(BigInt(top & 0xffffffffUL).get_mpz_t()));
  long double v = std::ldexp(m, static_cast<int>(std::max<std::int64_t>(std::min<std::int64_t>(-shift, 1 << 20), -(1 << 20))));
  return sgn(q) < 0 ? -v : v;
}

Rational rational_from(long double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite value");
  if (v == 0.0L) return 0;
  int e = 0;
  const long double f = std::frexp(std::fabs(v), &e);  // f in [0.5, 1)
  const auto bits = static_cast<unsigned long long>(std::ldexp(f, 64));
  BigInt m = static_cast<unsigned long>(bits >> 32);
  m <<= 32;
  m += static_cast<unsigned long>(bits & 0xffffffffULL);
  Rational q = Rational(m) * pow2_rational(e - 64);
  return v < 0 ? Rational(-q) : q;
}

std::string rational_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string decimal_string(const Rational& q, int digits) {
  if (sgn(q) == 0) return "0";
  // Exact dyadics with short expansions render exactly (3/16 -> 0.1875).
  const BigInt& den = q.get_den();
  const bool dyadic = mpz_popcount(den.get_mpz_t()) == 1;
  if (dyadic) {
    const auto k = static_cast<std::int64_t>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
    if (k <= 64) {
      BigInt scaled = abs(q.get_num());
      // num / 2^k = num * 5^k / 10^k
      BigInt five;
      mpz_ui_pow_ui(five.get_mpz_t(), 5, static_cast<unsigned long>(k));
      scaled *= five;
      std::string s = scaled.get_str();
      if (static_cast<std::int64_t>(s.size()) <= k) {
        s = std::string(static_cast<std::size_t>(k) - s.size() + 1, '0') + s;
      }
      std::string out = s.substr(0, s.size() - static_cast<std::size_t>(k));
      if (k > 0) out += "." + s.substr(s.size() - static_cast<std::size_t>(k));
      if (sgn(q) < 0) out = "-" + out;
      if (static_cast<int>(s.size()) <= digits + 1) return out;
    }
  }
  const long double v = to_long_double(q);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, v);
  return buf;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw DomainError("empty rational");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational q(BigInt(text.substr(0, slash), 10), BigInt(text.substr(slash + 1), 10));
    if (q.get_den() == 0) throw DomainError("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
  }
  const auto dot = text.find('.');
  try {
    if (dot == std::string::npos) return Rational(BigInt(text, 10));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const auto frac = text.size() - dot - 1;
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    if (digits.empty() || digits == "-" || digits == "+") throw DomainError("bad rational '" + text + "'");
    if (digits[0] == '+') digits.erase(0, 1);
    Rational q(BigInt(digits, 10), den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw DomainError("bad rational '" + text + "'");
  }
}

// ---------------------------------------------------------------------------

DyadicScalar::DyadicScalar(long value) : mantissa_(value), exp2_(0) { normalize(); }

DyadicScalar::DyadicScalar(BigInt mantissa, std::int64_t exp2)
    : mantissa_(std::move(mantissa)), exp2_(exp2) {
  normalize();
}

DyadicScalar DyadicScalar::pow2(std::int64_t e) { return DyadicScalar(BigInt(1), -e); }

DyadicScalar DyadicScalar::grid(const BigInt& index, std::int64_t level) {
  return DyadicScalar(index, level);
}

DyadicScalar DyadicScalar::from_rational(const Rational& q) {
  const BigInt& den = q.get_den();
  if (mpz_popcount(den.get_mpz_t()) != 1) {
    throw DomainError("not a dyadic rational: " + rational_string(q));
  }
  const auto k = static_cast<std::int64_t>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
  return DyadicScalar(q.get_num(), k);
}

void DyadicScalar::normalize() {
  if (sgn(mantissa_) == 0) {
    exp2_ = 0;
    return;
  }
  const auto tz = static_cast<std::int64_t>(mpz_scan1(mantissa_.get_mpz_t(), 0));
  if (tz > 0) {
    mpz_tdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(tz));
    exp2_ -= tz;
  }
}

DyadicScalar DyadicScalar::scaled(std::int64_t shift) const {
  if (is_zero()) return {};
  DyadicScalar r = *this;
  r.exp2_ -= shift;
  return r;
}

BigInt DyadicScalar::to_grid(std::int64_t scale) const {
  if (is_zero()) return 0;
  const std::int64_t s = scale - exp2_;
  if (s < 0) throw DomainError("value " + to_string() + " is not on the 2^-" + std::to_string(scale) + " grid");
  BigInt r = mantissa_;
  r <<= static_cast<mp_bitcnt_t>(s);
  return r;
}

BigInt DyadicScalar::floor_grid(std::int64_t scale) const {
  if (is_zero()) return 0;
  const std::int64_t s = scale - exp2_;
  BigInt r = mantissa_;
  if (s >= 0) {
    r <<= static_cast<mp_bitcnt_t>(s);
  } else {
    mpz_fdiv_q_2exp(r.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(-s));
  }
  return r;
}

Rational DyadicScalar::to_rational() const {
  Rational q(mantissa_);
  if (exp2_ > 0) {
    q /= Rational(pow2_int(exp2_));
  } else if (exp2_ < 0) {
    q *= Rational(pow2_int(-exp2_));
  }
  return q;
}

long double DyadicScalar::to_long_double() const { return cantorvort::to_long_double(to_rational()); }

DyadicScalar DyadicScalar::operator-() const {
  DyadicScalar r = *this;
  r.mantissa_ = -r.mantissa_;
  return r;
}

namespace {

// Brings both mantissas to the common exponent max(a.exp2, b.exp2).
std::pair<BigInt, BigInt> aligned(const DyadicScalar& a, const DyadicScalar& b, std::int64_t& exp) {
  exp = std::max(a.exp2(), b.exp2());
  BigInt ma = a.mantissa();
  BigInt mb = b.mantissa();
  if (exp > a.exp2()) ma <<= static_cast<mp_bitcnt_t>(exp - a.exp2());
  if (exp > b.exp2()) mb <<= static_cast<mp_bitcnt_t>(exp - b.exp2());
  return {ma, mb};
}

}  // namespace

DyadicScalar operator+(const DyadicScalar& a, const DyadicScalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::int64_t e = 0;
  auto [ma, mb] = aligned(a, b, e);
  return DyadicScalar(ma + mb, e);
}

DyadicScalar operator-(const DyadicScalar& a, const DyadicScalar& b) { return a + (-b); }

DyadicScalar operator*(const DyadicScalar& a, const DyadicScalar& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return DyadicScalar(a.mantissa_ * b.mantissa_, a.exp2_ + b.exp2_);
}

std::strong_ordering operator<=>(const DyadicScalar& a, const DyadicScalar& b) {
  if (a.sign() != b.sign()) return a.sign() <=> b.sign();
  if (a.exp2_ == b.exp2_) {
    const int c = cmp(a.mantissa_, b.mantissa_);
    return c <=> 0;
  }
  std::int64_t e = 0;
  auto [ma, mb] = aligned(a, b, e);
  const int c = cmp(ma, mb);
  return c <=> 0;
}

}  // namespace cantorvort
