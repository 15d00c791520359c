#include "cflgap/rational.hpp"

#include <cctype>

namespace cflgap {

BigInt to_bigint(std::uint64_t value) {
  BigInt z;
  mpz_set_ui(z.get_mpz_t(), static_cast<unsigned long>(value));
  return z;
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  if (!is_integer_text(text)) {
    throw Error(Error::Kind::invalid_argument, "malformed integer '" + std::string(text) + "'");
  }
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    Rational r(parse_bigint(text));
    return r;
  }
  const BigInt num = parse_bigint(text.substr(0, slash));
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw Error(Error::Kind::invalid_argument, "malformed rational '" + std::string(text) + "'");
  }
  const BigInt den = parse_bigint(den_text);
  if (den == 0) {
    throw Error(Error::Kind::invalid_argument, "zero denominator in '" + std::string(text) + "'");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt floor(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

BigInt ceil(const Rational& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Rational frac(const Rational& r) { return r - Rational(floor(r)); }

bool fits_u64(const BigInt& z) {
  return sgn(z) >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& z) {
  if (!fits_u64(z)) {
    throw Error(Error::Kind::internal, "integer " + z.get_str() + " does not fit in 64 bits");
  }
  // mpz_get_ui is 64-bit on LP64 targets.
  static_assert(sizeof(unsigned long) == 8);
  return mpz_get_ui(z.get_mpz_t());
}

}  // namespace cflgap
