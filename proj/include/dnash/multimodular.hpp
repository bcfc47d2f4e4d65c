#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dnash/groebner.hpp"
#include "dnash/mpoly.hpp"
#include "dnash/unipoly.hpp"

namespace dnash {

/// Rational univariate representation of a finite point set: with t = x_sep ranging over
/// the roots of `minpoly`, x_w = numer[w](t) / (denom[w] * minpoly'(t)).
struct Parametrisation {
  int sep = 0;
  IntPoly minpoly;  // primitive, positive leading coefficient
  std::vector<IntPoly> numer;  // indexed by variable; empty for sep and unused variables
  std::vector<Integer> denom;
};

/// Chinese remaindering of quotient-algebra data over many primes.
class MultimodularSolver {
 public:
  /// `vars` is the number of variables x_0..x_{vars-1}; `expected_dim` the quotient
  /// dimension a prime must show to be used (0: take the first usable prime's).
  MultimodularSolver(std::vector<ZPoly> polys, unsigned vars, std::size_t expected_dim);

  /// Processes the next prime. Returns false when it was discarded.
  bool add_prime();
  std::size_t primes_used() const { return used_; }
  std::size_t primes_tried() const { return tried_; }
  std::size_t dimension() const { return dim_; }

  /// Rational reconstruction of the parametrisation with separating variable `sep`
  /// from the primes so far; std::nullopt if some coefficient does not reconstruct.
  std::optional<Parametrisation> reconstruct(int sep) const;

 private:
  std::vector<ZPoly> polys_;
  unsigned vars_;
  std::size_t dim_;
  std::size_t next_prime_ = 0;
  std::size_t used_ = 0, tried_ = 0;
  Integer modulus_{1};
  // residues_[sep]: minpoly coefficients (dim_ of them, monic part dropped) followed by
  // dim_ coefficients per variable of minpoly' * x_w mod minpoly.
  std::vector<std::vector<Integer>> residues_;
};

/// Exact check over Q that every point of `par` is a solution with all coordinates
/// nonzero, and that the points are distinct (minpoly squarefree). Every polynomial
/// must be multi-affine in the variables.
bool verify_parametrisation(const std::vector<ZPoly>& polys, unsigned vars, const Parametrisation& par,
                            std::string* why = nullptr);

/// Numerator of f at the points of `par`, homogenised by the coordinate denominators:
/// it vanishes at a root of the minimal polynomial iff f vanishes at that point. f must
/// be multi-affine.
IntPoly homogenised_numerator(const ZPoly& f, unsigned vars, const Parametrisation& par);

/// Rational reconstruction of a mod m with numerator and denominator below sqrt(m/2).
std::optional<Rational> rational_reconstruction(const Integer& a, const Integer& m);

struct CertifiedSolutionSet {
  std::vector<Parametrisation> by_variable;  // one parametrisation per separating variable
  std::size_t primes = 0;
};

/// Multimodular parametrisations with every variable separating, each verified exactly.
/// Stops after `max_primes` usable primes.
std::optional<CertifiedSolutionSet> certified_solution_set(const std::vector<ZPoly>& polys, unsigned vars,
                                                           std::size_t expected_dim, std::size_t max_primes);

}  // namespace dnash
