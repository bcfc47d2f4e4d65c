#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dnash/unipoly.hpp"

namespace dnash {

bool is_prime(std::uint64_t n);

/// The first `count` primes in ascending order.
std::vector<std::uint32_t> first_primes(std::size_t count);

/// Polynomial over F_p, coefficient k multiplies t^k; trimmed like UniPoly.
class PrimePoly {
 public:
  PrimePoly(std::uint32_t modulus, std::vector<std::uint32_t> coeffs);
  /// Reduction of an integer polynomial.
  static PrimePoly reduce(const IntPoly& a, std::uint32_t modulus);
  static PrimePoly x(std::uint32_t modulus);

  std::uint32_t modulus() const { return p_; }
  const std::vector<std::uint32_t>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  std::uint32_t leading() const { return c_.back(); }

  PrimePoly derivative() const;
  PrimePoly monic() const;

  friend PrimePoly operator-(const PrimePoly& a, const PrimePoly& b);
  friend PrimePoly operator*(const PrimePoly& a, const PrimePoly& b);
  friend bool operator==(const PrimePoly&, const PrimePoly&) = default;

  /// Remainder modulo a nonzero polynomial.
  PrimePoly mod(const PrimePoly& f) const;
  PrimePoly quotient(const PrimePoly& f) const;

 private:
  void trim();
  std::uint32_t p_;
  std::vector<std::uint32_t> c_;
};

PrimePoly gcd(const PrimePoly& a, const PrimePoly& b);
/// base^e mod f.
PrimePoly powmod(const PrimePoly& base, std::uint64_t e, const PrimePoly& f);

/// Degrees of the irreducible factors of `a` mod p (ascending), from distinct-degree
/// factorisation. std::nullopt when p divides the leading coefficient or the
/// reduction is not squarefree. Throws if p is not prime.
std::optional<std::vector<int>> cycle_type(const IntPoly& a, std::uint32_t p);
/// Uses the primitive integer form of `a`.
std::optional<std::vector<int>> cycle_type(const UniPoly& a, std::uint32_t p);

}  // namespace dnash
