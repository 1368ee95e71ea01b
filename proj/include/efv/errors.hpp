#pragma once

#include <stdexcept>
#include <string>

namespace efv {

enum class errc {
  not_prime,
  reducible_modulus,
  zero_inverse,
  field_mismatch,
  cap_exceeded,
  no_embedding,
  singular_curve,
  hasse_violation,
  non_integral_count,
  pole_hit,
  no_convergence,
  n_insufficient,
  parse_error,
  not_ascending,
  invalid_config,
};

const char* errc_name(errc code);

/// Library-wide error type; `code()` distinguishes the failure class.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace efv
