#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace dnash {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised for contract violations and unrecoverable input errors across the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "123", "-7", or "num/den". The result is always canonical.
Rational parse_rational(std::string_view text);

/// Decimal for integers, "num/den" otherwise.
std::string format_rational(const Rational& q);

Integer parse_integer(std::string_view text);
std::string format_integer(const Integer& z);

inline int sign(const Integer& z) { return sgn(z); }
inline int sign(const Rational& q) { return sgn(q); }

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// base^exp for a non-negative machine exponent.
inline Integer pow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational pow(const Rational& base, unsigned long exp);

/// Exact 2^k for any signed k.
Rational pow2(long k);

}  // namespace dnash
