#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <string>

#include "ffembed/errors.hpp"

namespace ffembed {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Rational rational_pow(const Rational& base, long long e);
std::string to_string(const BigInt& v);
std::string to_string(const Rational& v);

// Parses a decimal literal ("0.25", "3", "1/8") into an exact rational.
Rational parse_rational(const std::string& s);

BigInt isqrt_floor(const BigInt& v);
BigInt iroot_floor(const BigInt& v, unsigned k);

// Closed rational interval [lo, hi] containing an exact real value. All
// operations round outward, so any comparison decided against an endpoint is
// certified in exact arithmetic.
struct RatInterval {
  Rational lo, hi;

  RatInterval() : lo(0), hi(0) {}
  RatInterval(Rational point) : lo(point), hi(point) {}
  RatInterval(Rational l, Rational h);

  bool is_point() const { return lo == hi; }
  Rational width() const { return hi - lo; }

  RatInterval operator+(const RatInterval& o) const;
  RatInterval operator-(const RatInterval& o) const;
  RatInterval operator*(const RatInterval& o) const;
  RatInterval operator/(const RatInterval& o) const;  // requires 0 not in o
  RatInterval operator-() const { return RatInterval(-hi, -lo); }
  RatInterval pow_u(unsigned e) const;
};

// Certified enclosures at >= `bits` fractional bits of precision.
RatInterval sqrt_interval(const Rational& x, unsigned bits);
RatInterval root_interval(const Rational& x, unsigned k, unsigned bits);
// base^(e) for positive rational base and rational exponent.
RatInterval pow_interval(const Rational& base, const Rational& e, unsigned bits);
RatInterval ln2_interval(unsigned bits);
RatInterval ln_interval(const Rational& x, unsigned bits);  // x > 0

// Exact comparison of x against coeff * q^exponent (coeff > 0, q >= 2).
// Returns -1, 0, +1 for x <, =, > the threshold. No rounding anywhere.
int cmp_vs_scaled_qpow(const Rational& x, const Rational& coeff, std::uint64_t q,
                       const Rational& exponent);

// A threshold of the exact form coeff * q^exponent.
struct PowThreshold {
  Rational coeff;
  std::uint64_t q = 0;
  Rational exponent;

  int cmp(const Rational& x) const {  // threshold vs x: -1 if threshold < x
    return -cmp_vs_scaled_qpow(x, coeff, q, exponent);
  }
  bool is_rational() const;
  Rational exact_value() const;  // requires is_rational()
  RatInterval to_interval(unsigned bits) const;
  std::string to_string() const;
};

enum class Cert { yes, no, unknown };

Cert cert_le(const Rational& lhs, const RatInterval& rhs);
Cert cert_lt(const Rational& lhs, const RatInterval& rhs);
Cert cert_ge(const Rational& lhs, const RatInterval& rhs);
Cert cert_gt(const Rational& lhs, const RatInterval& rhs);

// Evaluates `make` at increasing precision until the comparison with lhs is
// decided. Throws Errc::unsupported if still ambiguous at max precision
// (cannot happen when the enclosed value is irrational or the interval
// collapses to a point).
bool decide_le(const Rational& lhs, const std::function<RatInterval(unsigned)>& make);
bool decide_lt(const Rational& lhs, const std::function<RatInterval(unsigned)>& make);
bool decide_ge(const Rational& lhs, const std::function<RatInterval(unsigned)>& make);
bool decide_gt(const Rational& lhs, const std::function<RatInterval(unsigned)>& make);

}  // namespace ffembed
