#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "dnash/rational.hpp"

namespace dnash {

class IntPoly;

/// Dense univariate polynomial over Q. Coefficient k multiplies t^k.
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  UniPoly(std::initializer_list<long> coeffs);

  static UniPoly constant(const Rational& c);
  static UniPoly monomial(const Rational& c, std::size_t k);
  /// The linear polynomial t - root.
  static UniPoly linear_factor(const Rational& root);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coeff(std::size_t k) const;
  const Rational& leading() const;

  Rational eval(const Rational& t) const;
  int sign_at(const Rational& t) const;

  UniPoly derivative() const;
  /// p(t + shift).
  UniPoly taylor_shift(const Rational& shift) const;

  /// Scaled to primitive integer coefficients with positive leading coefficient.
  UniPoly primitive() const;
  IntPoly to_int_primitive() const;

  UniPoly operator-() const;
  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const Rational& s);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct PolyDivision {
  UniPoly quotient;
  UniPoly remainder;
};

PolyDivision divmod(const UniPoly& a, const UniPoly& b);
bool divides(const UniPoly& d, const UniPoly& a);

/// Greatest common divisor, primitive with positive leading coefficient; gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// Res(a, b) by the subresultant remainder sequence.
Rational resultant(const UniPoly& a, const UniPoly& b);

/// a / gcd(a, a'), primitive with positive leading coefficient.
UniPoly squarefree_part(const UniPoly& a);

/// Divides out every factor t - root (root exact). Returns the multiplicity removed.
int strip_root(UniPoly& a, const Rational& root);

/// Human readable form, e.g. "2*t^2 - 1/3*t + 5".
std::string to_string(const UniPoly& p, char var = 't');

/// Dense integer polynomial, used for primitive remainder sequences and fast
/// sign evaluation. Same trimming convention as UniPoly.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  const Integer& leading() const { return coeffs_.back(); }

  Integer content() const;
  /// Divides by the content, keeping the sign of the leading coefficient.
  IntPoly primitive_part() const;
  IntPoly derivative() const;
  UniPoly to_unipoly() const;

  /// Sign of p(t) for rational t, via homogenised Horner over the integers.
  int sign_at(const Rational& t) const;

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);
IntPoly exact_quotient(const IntPoly& a, const Integer& d);

}  // namespace dnash
