#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cflgap {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Thrown for any contract violation in the library. `code` mirrors the CLI
/// exit-code families (2 = invalid input or parameters, 3 = I/O).
class Error : public std::runtime_error {
 public:
  enum class Kind { invalid_argument, precondition, io, internal };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

inline Rational make_rational(std::int64_t num, std::int64_t den) {
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

inline Rational make_rational(std::uint64_t value) {
  Rational r;
  mpz_set_ui(r.get_num_mpz_t(), static_cast<unsigned long>(value));
  return r;
}

BigInt to_bigint(std::uint64_t value);

/// Serializes as "p/q" in lowest terms; integers carry an explicit "/1".
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

/// Accepts "p", "p/q" and a leading minus sign. Throws Error on malformed
/// text or a zero denominator.
Rational parse_rational(std::string_view text);
BigInt parse_bigint(std::string_view text);

BigInt floor(const Rational& r);
BigInt ceil(const Rational& r);
Rational frac(const Rational& r);

bool fits_u64(const BigInt& z);
std::uint64_t to_u64(const BigInt& z);

}  // namespace cflgap
