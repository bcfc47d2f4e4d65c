#pragma once

#include <vector>

#include "dnash/rational.hpp"
#include "dnash/unipoly.hpp"

namespace dnash {

/// Closed interval [low, high] with rational endpoints.
struct Interval {
  Rational low;
  Rational high;

  Interval() = default;
  Interval(Rational lo, Rational hi);
  static Interval point(const Rational& v) { return {v, v}; }

  Rational width() const { return high - low; }
  Rational midpoint() const { return (low + high) / 2; }
  bool contains(const Rational& v) const { return low <= v && v <= high; }
  bool contains_strictly(const Rational& v) const { return low < v && v < high; }
  bool overlaps(const Interval& o) const { return !(high < o.low || o.high < low); }
  bool is_point() const { return low == high; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Canonical Sturm chain of a squarefree polynomial, kept as primitive integer
/// polynomials (positive rescaling preserves sign variations).
class SturmSequence {
 public:
  explicit SturmSequence(const UniPoly& p);

  int variations_at(const Rational& t) const;
  /// Distinct real roots in the half-open interval (lo, hi].
  int count_roots(const Rational& lo, const Rational& hi) const;
  const IntPoly& base() const { return chain_.front(); }
  std::size_t length() const { return chain_.size(); }

 private:
  std::vector<IntPoly> chain_;
};

/// Upper bound B with every real root in (-B, B).
Rational cauchy_bound(const UniPoly& p);

/// Isolating intervals for the real roots of a squarefree p inside [range.low, range.high].
/// Returned intervals are disjoint, sorted, have endpoints that are not roots, and each
/// holds exactly one root. A root sitting exactly on a range endpoint is isolated by an
/// interval that reaches slightly past that endpoint.
std::vector<Interval> sturm_isolate(const UniPoly& p, const Interval& range);

/// Shrinks an interval bracketing a single root until its width is at most `width`.
/// A root hit exactly during bisection yields a point interval.
Interval refine_root(const UniPoly& p, const Interval& iv, const Rational& width);

/// Same as refine_root, for callers already holding the integer form of p.
Interval refine_root(const IntPoly& p, const Interval& iv, const Rational& width);

}  // namespace dnash
