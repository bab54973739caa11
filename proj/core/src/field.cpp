#include "ffembed/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace ffembed {

namespace {

constexpr std::uint64_t kMaxPrimeQ = 1ull << 20;
constexpr std::uint64_t kMaxExtensionQ = 59049;  // 3^10

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (a * b) % p;  // p <= 2^20, no overflow in 64 bits
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Finds (p, n) with q = p^n, p prime. Returns false if q is not a prime power.
bool factor_prime_power(std::uint64_t q, std::uint64_t& p, unsigned& n) {
  if (q < 2) return false;
  std::uint64_t f = 0;
  for (std::uint64_t c = 2; c * c <= q; ++c) {
    if (q % c == 0) {
      f = c;
      break;
    }
  }
  if (f == 0) {
    p = q;
    n = 1;
    return true;
  }
  p = f;
  n = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++n;
  }
  return r == 1;
}

// Digit helpers for extension-field encodings (base p, n digits).
void decompose(std::uint64_t v, std::uint64_t p, unsigned n, std::uint32_t* out) {
  for (unsigned i = 0; i < n; ++i) {
    out[i] = static_cast<std::uint32_t>(v % p);
    v /= p;
  }
}

std::uint64_t recompose(const std::uint32_t* d, std::uint64_t p, unsigned n) {
  std::uint64_t v = 0;
  for (unsigned i = n; i-- > 0;) v = v * p + d[i];
  return v;
}

// Polynomial arithmetic over F_p with coefficient vectors (degree = size-1).
using Poly = std::vector<std::uint32_t>;

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t(a[i]) * b[j]) % p;
  // reduce modulo the monic polynomial `mod` of degree m
  std::size_t m = mod.size() - 1;
  if (acc.size() < m) acc.resize(m, 0);
  for (std::size_t i = acc.size(); i-- > m;) {
    std::uint64_t c = acc[i];
    if (c == 0) continue;
    acc[i] = 0;
    for (std::size_t j = 0; j < m; ++j) {
      std::uint64_t sub = (c * mod[j]) % p;
      acc[i - m + j] = (acc[i - m + j] + p - sub) % p;
    }
  }
  Poly r(m);
  for (std::size_t i = 0; i < m; ++i) r[i] = static_cast<std::uint32_t>(acc[i]);
  poly_trim(r);
  return r;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& mod, std::uint64_t p) {
  Poly r = {1};
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, mod, p);
    base = poly_mulmod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = static_cast<std::uint32_t>((a[i] + p - b[i]) % p);
  poly_trim(a);
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    // a mod b
    while (a.size() >= b.size() && !a.empty()) {
      std::uint64_t lead_inv = powmod(b.back(), p - 2, p);
      std::uint64_t c = mulmod(a.back(), lead_inv, p);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        std::uint64_t sub = mulmod(c, b[i], p);
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
      }
      poly_trim(a);
    }
    std::swap(a, b);
  }
  return a;
}

// Rabin's irreducibility test for a monic polynomial of degree n over F_p.
bool poly_irreducible(const Poly& f, std::uint64_t p) {
  unsigned n = static_cast<unsigned>(f.size() - 1);
  if (n == 0) return false;
  Poly x = {0, 1};
  // x^(p^n) == x mod f
  Poly t = x;
  for (unsigned i = 0; i < n; ++i) t = poly_powmod(t, p, f, p);
  if (!poly_sub(t, x, p).empty()) return false;
  // for each prime divisor l of n: gcd(x^(p^(n/l)) - x, f) must be constant
  std::vector<unsigned> primes;
  unsigned m = n;
  for (unsigned l = 2; l * l <= m; ++l) {
    if (m % l == 0) {
      primes.push_back(l);
      while (m % l == 0) m /= l;
    }
  }
  if (m > 1) primes.push_back(m);
  for (unsigned l : primes) {
    Poly u = x;
    for (unsigned i = 0; i < n / l; ++i) u = poly_powmod(u, p, f, p);
    Poly g = poly_gcd(poly_sub(u, x, p), f, p);
    if (g.size() > 1) return false;
  }
  return true;
}

// Tonelli-Shanks square root modulo an odd prime.
std::optional<std::uint64_t> prime_sqrt(std::uint64_t a, std::uint64_t p) {
  if (a == 0) return 0;
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  std::uint64_t s = 0, odd = p - 1;
  while (odd % 2 == 0) {
    odd /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s;
  std::uint64_t c = powmod(z, odd, p);
  std::uint64_t t = powmod(a, odd, p);
  std::uint64_t r = powmod(a, (odd + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

}  // namespace

std::shared_ptr<const Field> Field::make(std::uint64_t q) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const Field>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(q);
  if (it != registry.end()) return it->second;

  std::uint64_t p;
  unsigned n;
  if (q < 3 || !factor_prime_power(q, p, n))
    fail(Errc::not_odd_prime_power, "q = " + std::to_string(q) + " is not an odd prime power >= 3");
  if (p == 2) fail(Errc::not_odd_prime_power, "q = " + std::to_string(q) + " is even");
  if (n == 1 && q > kMaxPrimeQ)
    fail(Errc::unsupported, "prime field size exceeds 2^20");
  if (n > 1 && q > kMaxExtensionQ)
    fail(Errc::unsupported, "extension field size exceeds 3^10");

  auto field = std::shared_ptr<Field>(new Field(q, p, n));
  registry.emplace(q, field);
  return field;
}

Field::Field(std::uint64_t q, std::uint64_t p, unsigned n) : q_(q), p_(p), n_(n) {
  if (n_ > 1) build_extension_tables();
}

void Field::build_extension_tables() {
  // Modulus: the first monic irreducible polynomial of degree n in the
  // numeric order of low-coefficient encodings (lexicographic on the
  // coefficient tuple read most significant first).
  std::uint64_t pn = 1;
  for (unsigned i = 0; i < n_; ++i) pn *= p_;
  for (std::uint64_t low = 0; low < pn; ++low) {
    Poly f(n_ + 1, 0);
    std::vector<std::uint32_t> digits(n_);
    decompose(low, p_, n_, digits.data());
    for (unsigned i = 0; i < n_; ++i) f[i] = digits[i];
    f[n_] = 1;
    if (poly_irreducible(f, p_)) {
      modulus_.assign(f.begin(), f.end() - 1);
      break;
    }
  }
  if (modulus_.empty()) fail(Errc::unsupported, "no irreducible modulus found");

  // Discrete log/exponent tables over a fixed generator.
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  for (std::uint64_t cand = 2; cand < q_; ++cand) {
    std::uint64_t v = cand;
    std::uint64_t order = 1;
    while (v != 1) {
      v = poly_mul(v, cand);
      ++order;
      if (order > q_ - 1) fail(Errc::unsupported, "generator search overflow");
    }
    if (order == q_ - 1) {
      std::uint64_t acc = 1;
      for (std::uint64_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = static_cast<std::uint32_t>(acc);
        log_[acc] = static_cast<std::uint32_t>(i);
        acc = poly_mul(acc, cand);
      }
      return;
    }
  }
  fail(Errc::unsupported, "no multiplicative generator found");
}

std::uint64_t Field::poly_mul(std::uint64_t a, std::uint64_t b) const {
  std::uint32_t da[16], db[16];
  decompose(a, p_, n_, da);
  decompose(b, p_, n_, db);
  std::uint64_t acc[32] = {0};
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) acc[i + j] = (acc[i + j] + std::uint64_t(da[i]) * db[j]) % p_;
  for (unsigned i = 2 * n_ - 1; i >= n_; --i) {
    std::uint64_t c = acc[i];
    if (c == 0) continue;
    acc[i] = 0;
    for (unsigned j = 0; j < n_; ++j) {
      std::uint64_t sub = (c * modulus_[j]) % p_;
      acc[i - n_ + j] = (acc[i - n_ + j] + p_ - sub) % p_;
    }
  }
  std::uint32_t out[16];
  for (unsigned i = 0; i < n_; ++i) out[i] = static_cast<std::uint32_t>(acc[i]);
  return recompose(out, p_, n_);
}

Scalar Field::element(std::uint64_t encoding) const {
  if (encoding >= q_) fail(Errc::bad_params, "encoding out of range");
  return Scalar(this, encoding);
}

Scalar Field::from_int(std::int64_t v) const {
  std::int64_t m = static_cast<std::int64_t>(p_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return Scalar(this, static_cast<std::uint64_t>(r));
}

std::uint64_t Field::add(std::uint64_t a, std::uint64_t b) const {
  if (n_ == 1) {
    std::uint64_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  std::uint32_t da[16], db[16], out[16];
  decompose(a, p_, n_, da);
  decompose(b, p_, n_, db);
  for (unsigned i = 0; i < n_; ++i) {
    std::uint32_t s = da[i] + db[i];
    out[i] = s >= p_ ? s - static_cast<std::uint32_t>(p_) : s;
  }
  return recompose(out, p_, n_);
}

std::uint64_t Field::neg(std::uint64_t a) const {
  if (n_ == 1) return a == 0 ? 0 : q_ - a;
  std::uint32_t da[16], out[16];
  decompose(a, p_, n_, da);
  for (unsigned i = 0; i < n_; ++i) out[i] = da[i] == 0 ? 0 : static_cast<std::uint32_t>(p_) - da[i];
  return recompose(out, p_, n_);
}

std::uint64_t Field::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t Field::mul(std::uint64_t a, std::uint64_t b) const {
  if (n_ == 1) return mulmod(a, b, q_);
  if (a == 0 || b == 0) return 0;
  std::uint64_t e = log_[a] + log_[b];
  if (e >= q_ - 1) e -= q_ - 1;
  return exp_[e];
}

std::uint64_t Field::inv(std::uint64_t a) const {
  if (a == 0) fail(Errc::division_by_zero, "inverse of zero");
  if (n_ == 1) return powmod(a, q_ - 2, q_);
  std::uint64_t e = (q_ - 1 - log_[a]) % (q_ - 1);
  return exp_[e];
}

bool Field::is_square(std::uint64_t a) const {
  if (a == 0) return true;
  if (n_ == 1) return powmod(a, (q_ - 1) / 2, q_) == 1;
  return log_[a] % 2 == 0;
}

std::optional<std::uint64_t> Field::sqrt(std::uint64_t a) const {
  if (a == 0) return 0;
  std::optional<std::uint64_t> r;
  if (n_ == 1) {
    r = prime_sqrt(a, q_);
  } else {
    std::uint64_t e = log_[a];
    if (e % 2 != 0) return std::nullopt;
    r = exp_[e / 2];
  }
  if (!r) return std::nullopt;
  std::uint64_t other = neg(*r);
  return std::min(*r, other);
}

bool Field::has_sqrt_minus_one() const { return is_square(neg(1)); }

unsigned Field::token_width() const {
  if (n_ == 1) return 0;  // variable-width decimal
  unsigned w = 1;
  for (std::uint64_t v = p_ - 1; v >= 10; v /= 10) ++w;
  return n_ * w;
}

std::string Field::format(std::uint64_t a) const {
  if (a >= q_) fail(Errc::bad_params, "encoding out of range");
  if (n_ == 1) return std::to_string(a);
  unsigned w = token_width() / n_;
  std::uint32_t d[16];
  decompose(a, p_, n_, d);
  std::string out;
  for (unsigned i = n_; i-- > 0;) {
    std::string digit = std::to_string(d[i]);
    out.append(w - digit.size(), '0');
    out += digit;
  }
  return out;
}

std::uint64_t Field::parse(std::string_view token) const {
  if (token.empty()) fail(Errc::io_error, "empty scalar token");
  if (n_ == 1) {
    std::uint64_t v = 0;
    for (char c : token) {
      if (c < '0' || c > '9') fail(Errc::io_error, "malformed scalar token");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
      if (v >= q_) fail(Errc::io_error, "scalar token out of range");
    }
    return v;
  }
  unsigned width = token_width();
  unsigned w = width / n_;
  if (token.size() != width)
    fail(Errc::io_error, "extension scalar token must have exactly " + std::to_string(width) + " digits");
  std::uint32_t d[16];
  for (unsigned i = 0; i < n_; ++i) {
    std::uint64_t digit = 0;
    for (unsigned j = 0; j < w; ++j) {
      char c = token[i * w + j];
      if (c < '0' || c > '9') fail(Errc::io_error, "malformed scalar token");
      digit = digit * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (digit >= p_) fail(Errc::io_error, "digit exceeds characteristic");
    d[n_ - 1 - i] = static_cast<std::uint32_t>(digit);
  }
  return recompose(d, p_, n_);
}

namespace {
const Field& require_same_field(const Scalar& a, const Scalar& b) {
  const Field& fa = a.field();
  const Field& fb = b.field();
  if (&fa != &fb) fail(Errc::field_mismatch, "scalars from different fields");
  return fa;
}
}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  const Field& f = require_same_field(*this, o);
  return Scalar(&f, f.add(v_, o.v_));
}
Scalar Scalar::operator-(const Scalar& o) const {
  const Field& f = require_same_field(*this, o);
  return Scalar(&f, f.sub(v_, o.v_));
}
Scalar Scalar::operator*(const Scalar& o) const {
  const Field& f = require_same_field(*this, o);
  return Scalar(&f, f.mul(v_, o.v_));
}
Scalar Scalar::operator-() const {
  const Field& f = field();
  return Scalar(&f, f.neg(v_));
}
Scalar Scalar::inverse() const {
  const Field& f = field();
  return Scalar(&f, f.inv(v_));
}
bool Scalar::operator==(const Scalar& o) const {
  require_same_field(*this, o);
  return v_ == o.v_;
}
bool Scalar::operator<(const Scalar& o) const {
  require_same_field(*this, o);
  return v_ < o.v_;
}
std::string Scalar::str() const { return field().format(v_); }

}  // namespace ffembed
