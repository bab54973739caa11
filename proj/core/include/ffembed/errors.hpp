#pragma once

#include <stdexcept>
#include <string>

namespace ffembed {

enum class Errc {
  not_odd_prime_power,
  division_by_zero,
  field_mismatch,
  space_mismatch,
  empty_set,
  zero_distance,
  no_sqrt_minus_one,
  bad_params,
  bad_density,
  not_a_tree,
  disconnected,
  budget_exceeded,
  missing_param,
  io_error,
  unsupported,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace ffembed
