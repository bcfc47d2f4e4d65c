#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dnash/rational.hpp"

namespace dnash {

inline constexpr int kMaxVars = 8;

/// Exponent vector packed 16 bits per variable with variable 0 in the top bits, so
/// integer order on monomials is lex order with x0 > x1 > ...
using Monomial = unsigned __int128;

inline int exponent_of(Monomial m, int v) {
  return static_cast<int>((m >> (16 * (kMaxVars - 1 - v))) & 0xffffu);
}
inline Monomial unit_monomial(int v, unsigned e = 1) {
  return static_cast<Monomial>(e) << (16 * (kMaxVars - 1 - v));
}

struct IntegerRing {
  using Elem = Integer;
  static Elem from_long(long v) { return Elem(v); }
  static bool is_zero(const Elem& a) { return sgn(a) == 0; }
  static Elem add(const Elem& a, const Elem& b) { return a + b; }
  static Elem sub(const Elem& a, const Elem& b) { return a - b; }
  static Elem mul(const Elem& a, const Elem& b) { return a * b; }
  static Elem neg(const Elem& a) { return -a; }
  friend bool operator==(const IntegerRing&, const IntegerRing&) { return true; }
};

struct PrimeField {
  std::uint32_t p = 2;

  using Elem = std::uint32_t;
  Elem from_long(long v) const {
    long r = v % static_cast<long>(p);
    return static_cast<Elem>(r < 0 ? r + p : r);
  }
  Elem reduce(const Integer& z) const { return static_cast<Elem>(mpz_fdiv_ui(z.get_mpz_t(), p)); }
  static bool is_zero(Elem a) { return a == 0; }
  Elem add(Elem a, Elem b) const {
    const std::uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  friend bool operator==(const PrimeField&, const PrimeField&) = default;
};

/// Sparse polynomial in up to kMaxVars variables. Terms are kept sorted by decreasing
/// monomial with nonzero coefficients, so equality is structural.
template <class Ring>
class MPoly {
 public:
  using Elem = typename Ring::Elem;
  using Term = std::pair<Monomial, Elem>;

  MPoly() = default;
  explicit MPoly(Ring ring) : ring_(ring) {}
  /// Sorts and merges arbitrary terms.
  MPoly(Ring ring, std::vector<Term> terms);

  static MPoly constant(Ring ring, const Elem& c);
  static MPoly variable(Ring ring, int v);

  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  /// Lex-leading coefficient; requires nonzero.
  const Elem& leading() const { return terms_.front().second; }
  /// Constant term (zero if absent).
  Elem constant_term() const;

  int degree(int v) const;
  /// Bitmask of variables that occur.
  unsigned variables() const;
  bool uses(int v) const { return (variables() >> v) & 1u; }

  /// Coefficients as polynomials in the other variables: result[k] multiplies x_v^k.
  std::vector<MPoly> coefficients_in(int v) const;
  static MPoly from_coefficients_in(int v, const std::vector<MPoly>& coeffs);

  /// Substitutes x_v = value.
  MPoly evaluate(int v, const Elem& value) const;
  /// Divides by the largest monomial x^a with a supported on `mask` dividing every term.
  MPoly strip_monomial(unsigned mask) const;
  /// Renames variable v to w (w must not occur).
  MPoly rename(int v, int w) const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly scaled(const Elem& s) const;

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) { return multiply(a, b); }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

  MPoly pow(unsigned e) const;

 private:
  static MPoly multiply(const MPoly& a, const MPoly& b);
  Ring ring_{};
  std::vector<Term> terms_;
};

using ZPoly = MPoly<IntegerRing>;
using FpPoly = MPoly<PrimeField>;

/// Primitive part with positive leading coefficient (zero stays zero).
ZPoly primitive(const ZPoly& a);
Integer content(const ZPoly& a);
/// Leading coefficient made one (zero stays zero).
FpPoly monic(const FpPoly& a);

FpPoly reduce(const ZPoly& a, std::uint32_t p);

/// Sum of absolute values of the coefficients.
Integer norm1(const ZPoly& a);

/// Res_{x_v}(g, h) in the remaining variables. Formal degrees are the actual degrees
/// in x_v. Nonzero constants in x_v are handled by the usual power rule.
FpPoly resultant(const FpPoly& g, const FpPoly& h, int v);
/// Integer resultant from images modulo primes below 2^26, combined by CRT up to a
/// 1-norm bound on the result.
ZPoly resultant(const ZPoly& g, const ZPoly& h, int v);

/// Primes below 2^26 in descending order, used for multimodular reconstruction.
const std::vector<std::uint32_t>& reconstruction_primes(std::size_t count);

std::string to_string(const ZPoly& p);

}  // namespace dnash
