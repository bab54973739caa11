#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ffembed/errors.hpp"

namespace ffembed {

class Field;

// Element of F_q, stored as its canonical encoding: the value itself for
// prime fields, the base-p digit encoding of the coefficient tuple for
// extension fields (constant term = least significant digit). Total order is
// the numeric order of encodings.
class Scalar {
 public:
  Scalar() : field_(nullptr), v_(0) {}
  Scalar(const Field* field, std::uint64_t encoding) : field_(field), v_(encoding) {}

  std::uint64_t encoding() const { return v_; }
  const Field& field() const;
  bool is_zero() const { return v_ == 0; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  bool operator<(const Scalar& o) const;

  std::string str() const;

 private:
  const Field* field_;
  std::uint64_t v_;
};

// Immutable description of F_q (odd prime power). Instances are created
// through Field::make and cached for the process lifetime, so raw pointers
// held by Scalar/Point never dangle and pointer equality means field
// equality.
class Field {
 public:
  // q odd prime power, q >= 3. Supported range: q <= 2^20 for prime fields,
  // q <= 3^10 for extensions.
  static std::shared_ptr<const Field> make(std::uint64_t q);

  std::uint64_t q() const { return q_; }
  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return n_; }
  bool is_prime_field() const { return n_ == 1; }
  // Coefficients of the modulus polynomial x^n + c[n-1] x^(n-1) + ... + c[0]
  // (empty for prime fields).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Scalar zero() const { return Scalar(this, 0); }
  Scalar one() const { return Scalar(this, 1); }
  Scalar element(std::uint64_t encoding) const;
  Scalar from_int(std::int64_t v) const;  // reduces v into the prime subfield

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;
  std::uint64_t inv(std::uint64_t a) const;

  bool is_square(std::uint64_t a) const;  // 0 counts as a square
  // Lexicographically smaller root when one exists.
  std::optional<std::uint64_t> sqrt(std::uint64_t a) const;
  bool has_sqrt_minus_one() const;

  // Canonical text form: decimal for prime fields; for extensions, n base-p
  // digits (most significant coefficient first), each digit zero-padded to
  // the width of p-1.
  std::string format(std::uint64_t a) const;
  std::uint64_t parse(std::string_view token) const;
  unsigned token_width() const;

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  Field(std::uint64_t q, std::uint64_t p, unsigned n);
  void build_extension_tables();
  std::uint64_t poly_mul(std::uint64_t a, std::uint64_t b) const;

  std::uint64_t q_, p_;
  unsigned n_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_, log_;  // extension fields only
};

inline const Field& Scalar::field() const {
  if (!field_) fail(Errc::bad_params, "scalar has no field");
  return *field_;
}

}  // namespace ffembed
