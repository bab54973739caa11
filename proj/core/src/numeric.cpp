#include "ffembed/numeric.hpp"

#include <algorithm>
#include <array>

namespace ffembed {

namespace mp = boost::multiprecision;

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::not_odd_prime_power: return "NotOddPrimePower";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::field_mismatch: return "FieldMismatch";
    case Errc::space_mismatch: return "SpaceMismatch";
    case Errc::empty_set: return "EmptySet";
    case Errc::zero_distance: return "ZeroDistance";
    case Errc::no_sqrt_minus_one: return "NoSqrtMinusOne";
    case Errc::bad_params: return "BadParams";
    case Errc::bad_density: return "BadDensity";
    case Errc::not_a_tree: return "NotATree";
    case Errc::disconnected: return "Disconnected";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::missing_param: return "MissingParam";
    case Errc::io_error: return "IoError";
    case Errc::unsupported: return "Unsupported";
  }
  return "Unknown";
}

std::string to_string(const BigInt& v) { return v.str(); }
std::string to_string(const Rational& v) {
  if (mp::denominator(v) == 1) return mp::numerator(v).str();
  return mp::numerator(v).str() + "/" + mp::denominator(v).str();
}

Rational rational_pow(const Rational& base, long long e) {
  if (e == 0) return Rational(1);
  if (base == 0) {
    if (e < 0) fail(Errc::division_by_zero, "0 raised to a negative power");
    return Rational(0);
  }
  BigInt n = mp::numerator(base), d = mp::denominator(base);
  unsigned long long a = e < 0 ? static_cast<unsigned long long>(-e)
                               : static_cast<unsigned long long>(e);
  BigInt np = mp::pow(n, static_cast<unsigned>(a));
  BigInt dp = mp::pow(d, static_cast<unsigned>(a));
  Rational r(np, dp);
  if (e < 0) r = Rational(dp, np);
  return r;
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) fail(Errc::bad_params, "empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d == 0) fail(Errc::division_by_zero, "zero denominator in " + s);
    return Rational(n, d);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(BigInt(s));
  std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
  if (tail.empty()) return Rational(BigInt(head.empty() ? "0" : head));
  bool neg = !head.empty() && head[0] == '-';
  if (neg) head = head.substr(1);
  if (head.empty()) head = "0";
  BigInt scale = mp::pow(BigInt(10), static_cast<unsigned>(tail.size()));
  BigInt v = BigInt(head) * scale + BigInt(tail);
  Rational r(v, scale);
  return neg ? -r : r;
}

BigInt isqrt_floor(const BigInt& v) { return iroot_floor(v, 2); }

BigInt iroot_floor(const BigInt& v, unsigned k) {
  if (v < 0) fail(Errc::bad_params, "root of negative value");
  if (k == 0) fail(Errc::bad_params, "zeroth root");
  if (v == 0 || v == 1 || k == 1) return v;
  std::size_t bits = mp::msb(v) + 1;
  BigInt x = BigInt(1) << (bits / k + 1);
  while (true) {
    BigInt xk1 = mp::pow(x, k - 1);
    BigInt xn = ((k - 1) * x + v / xk1) / k;
    if (xn >= x) break;
    x = xn;
  }
  while (mp::pow(x, k) > v) --x;
  while (mp::pow(x + 1, k) <= v) ++x;
  return x;
}

RatInterval::RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) fail(Errc::bad_params, "inverted interval");
}

RatInterval RatInterval::operator+(const RatInterval& o) const {
  return RatInterval(lo + o.lo, hi + o.hi);
}
RatInterval RatInterval::operator-(const RatInterval& o) const {
  return RatInterval(lo - o.hi, hi - o.lo);
}
RatInterval RatInterval::operator*(const RatInterval& o) const {
  std::array<Rational, 4> p = {lo * o.lo, lo * o.hi, hi * o.lo, hi * o.hi};
  return RatInterval(*std::min_element(p.begin(), p.end()),
                     *std::max_element(p.begin(), p.end()));
}
RatInterval RatInterval::operator/(const RatInterval& o) const {
  if (o.lo <= 0 && o.hi >= 0) fail(Errc::division_by_zero, "interval division through zero");
  RatInterval inv(Rational(1) / o.hi, Rational(1) / o.lo);
  return *this * inv;
}
RatInterval RatInterval::pow_u(unsigned e) const {
  RatInterval r{Rational(1)};
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

RatInterval sqrt_interval(const Rational& x, unsigned bits) {
  return root_interval(x, 2, bits);
}

RatInterval root_interval(const Rational& x, unsigned k, unsigned bits) {
  if (x < 0) fail(Errc::bad_params, "root of negative rational");
  if (x == 0) return RatInterval(Rational(0));
  BigInt n = mp::numerator(x), d = mp::denominator(x);
  // x^(1/k) = (n * d^(k-1))^(1/k) / d, then scaled by 2^bits for precision.
  BigInt radicand = n * mp::pow(d, k - 1);
  BigInt scaled = radicand << (static_cast<std::size_t>(bits) * k);
  BigInt y = iroot_floor(scaled, k);
  BigInt denom = d << bits;
  RatInterval r(Rational(y, denom), Rational(y + 1, denom));
  if (rational_pow(r.lo, static_cast<long long>(k)) == x) r.hi = r.lo;  // exact root
  return r;
}

RatInterval pow_interval(const Rational& base, const Rational& e, unsigned bits) {
  if (base <= 0) fail(Errc::bad_params, "pow of non-positive base");
  BigInt en = mp::numerator(e), ed = mp::denominator(e);
  if (mp::abs(en) > 1000000 || ed > 1000000)
    fail(Errc::unsupported, "exponent too large for exact power");
  Rational r = rational_pow(base, en.convert_to<long long>());
  unsigned k = ed.convert_to<unsigned>();
  if (k == 1) return RatInterval(r);
  return root_interval(r, k, bits);
}

namespace {

// 2*atanh(z) = 2*sum z^(2i+1)/(2i+1), with certified truncation error for
// 0 <= z <= 1/3.
RatInterval atanh2_series(const Rational& z, unsigned bits) {
  if (z == 0) return RatInterval(Rational(0));
  unsigned terms = bits / 3 + 8;
  Rational sum(0), zp = z, z2 = z * z;
  for (unsigned i = 0; i < terms; ++i) {
    sum += zp / Rational(2 * i + 1);
    zp *= z2;
  }
  sum *= 2;
  // remainder of 2*sum_{i>=terms}: bounded by 2*z^(2*terms+1)/((2*terms+1)(1-z^2))
  Rational rem = 2 * zp / (Rational(2 * terms + 1) * (Rational(1) - z2));
  return RatInterval(sum, sum + rem);
}

}  // namespace

RatInterval ln2_interval(unsigned bits) { return atanh2_series(Rational(1, 3), bits); }

RatInterval ln_interval(const Rational& x, unsigned bits) {
  if (x <= 0) fail(Errc::bad_params, "ln of non-positive rational");
  if (x == 1) return RatInterval(Rational(0));
  if (x < 1) return -ln_interval(Rational(1) / x, bits);
  long long j = 0;
  Rational m = x;
  while (m >= 2) {
    m /= 2;
    ++j;
  }
  // m in [1,2): z = (m-1)/(m+1) in [0,1/3)
  RatInterval lnm = atanh2_series((m - 1) / (m + 1), bits);
  if (j == 0) return lnm;
  RatInterval l2 = ln2_interval(bits);
  Rational jj(j);
  return lnm + RatInterval(l2.lo * jj, l2.hi * jj);
}

int cmp_vs_scaled_qpow(const Rational& x, const Rational& coeff, std::uint64_t q,
                       const Rational& exponent) {
  if (coeff <= 0) fail(Errc::bad_params, "threshold coefficient must be positive");
  if (q < 2) fail(Errc::bad_params, "threshold base must be >= 2");
  if (x <= 0) return -1;  // threshold is strictly positive
  Rational y = x / coeff;
  BigInt a = mp::numerator(exponent), b = mp::denominator(exponent);
  if (mp::abs(a) > 1000000 || b > 1000000)
    fail(Errc::unsupported, "exponent too large for exact comparison");
  // y vs q^(a/b)  <=>  y^b vs q^a
  Rational lhs = rational_pow(y, b.convert_to<long long>());
  Rational rhs = rational_pow(Rational(q), a.convert_to<long long>());
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

bool PowThreshold::is_rational() const {
  return mp::denominator(exponent) == 1;
}

Rational PowThreshold::exact_value() const {
  if (!is_rational()) fail(Errc::unsupported, "threshold exponent is not integral");
  return coeff * rational_pow(Rational(q), mp::numerator(exponent).convert_to<long long>());
}

RatInterval PowThreshold::to_interval(unsigned bits) const {
  RatInterval p = pow_interval(Rational(q), exponent, bits);
  return RatInterval(coeff) * p;
}

std::string PowThreshold::to_string() const {
  return ffembed::to_string(coeff) + " * " + std::to_string(q) + "^(" +
         ffembed::to_string(exponent) + ")";
}

Cert cert_le(const Rational& lhs, const RatInterval& rhs) {
  if (lhs <= rhs.lo) return Cert::yes;
  if (lhs > rhs.hi) return Cert::no;
  if (rhs.is_point()) return lhs <= rhs.lo ? Cert::yes : Cert::no;
  return Cert::unknown;
}
Cert cert_lt(const Rational& lhs, const RatInterval& rhs) {
  if (lhs < rhs.lo) return Cert::yes;
  if (lhs >= rhs.hi) return Cert::no;
  if (rhs.is_point()) return lhs < rhs.lo ? Cert::yes : Cert::no;
  return Cert::unknown;
}
Cert cert_ge(const Rational& lhs, const RatInterval& rhs) {
  Cert c = cert_lt(lhs, rhs);
  if (c == Cert::unknown) return c;
  return c == Cert::yes ? Cert::no : Cert::yes;
}
Cert cert_gt(const Rational& lhs, const RatInterval& rhs) {
  Cert c = cert_le(lhs, rhs);
  if (c == Cert::unknown) return c;
  return c == Cert::yes ? Cert::no : Cert::yes;
}

namespace {

bool decide(const Rational& lhs, const std::function<RatInterval(unsigned)>& make,
            Cert (*pred)(const Rational&, const RatInterval&)) {
  for (unsigned bits = 64; bits <= 4096; bits *= 2) {
    Cert c = pred(lhs, make(bits));
    if (c == Cert::yes) return true;
    if (c == Cert::no) return false;
  }
  fail(Errc::unsupported, "interval comparison undecided at maximum precision");
}

}  // namespace

bool decide_le(const Rational& lhs, const std::function<RatInterval(unsigned)>& make) {
  return decide(lhs, make, cert_le);
}
bool decide_lt(const Rational& lhs, const std::function<RatInterval(unsigned)>& make) {
  return decide(lhs, make, cert_lt);
}
bool decide_ge(const Rational& lhs, const std::function<RatInterval(unsigned)>& make) {
  return decide(lhs, make, cert_ge);
}
bool decide_gt(const Rational& lhs, const std::function<RatInterval(unsigned)>& make) {
  return decide(lhs, make, cert_gt);
}

}  // namespace ffembed
