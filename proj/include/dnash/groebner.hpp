#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dnash/mpoly.hpp"

namespace dnash {

/// Zero-dimensional solving over F_p: a grevlex Groebner basis, the quotient algebra's
/// multiplication maps, and from them minimal polynomials and shape-lemma parametrisations.
class ModularQuotient {
 public:
  /// std::nullopt when the ideal is not zero-dimensional (or its quotient exceeds max_dimension).
  static std::optional<ModularQuotient> compute(const std::vector<FpPoly>& polys, unsigned vars,
                                                std::size_t max_dimension = 4096);

  std::uint32_t modulus() const { return p_; }
  /// Dimension of F_p[x]/I.
  std::size_t dimension() const { return standard_.size(); }
  std::size_t basis_size() const { return basis_.size(); }

  /// Minimal polynomial of x_v in the quotient (monic, ascending coefficients).
  std::vector<std::uint32_t> minimal_polynomial(int v) const;

  /// When x_v generates the quotient (its minimal polynomial has degree dimension()),
  /// returns for every variable w the polynomial phi_w with x_w = phi_w(x_v) in the
  /// quotient (phi_v = t). Indexed by variable; unused variables get empty vectors.
  std::optional<std::vector<std::vector<std::uint32_t>>> parametrisation(int v) const;

 private:
  struct Term {
    std::uint64_t mono;
    std::uint32_t deg;
    std::uint32_t c;
  };
  using Poly = std::vector<Term>;

  std::vector<std::uint32_t> normal_form_vector(std::uint64_t mono) const;
  std::vector<std::vector<std::uint32_t>> krylov(int v, std::size_t count) const;

  std::uint32_t p_ = 2;
  unsigned vars_ = 0;
  std::vector<Poly> basis_;                 // reduced Groebner basis, monic
  std::vector<std::uint64_t> standard_;     // standard monomials, ascending grevlex
  std::vector<std::vector<std::vector<std::uint32_t>>> mult_;  // mult_[v][k] = NF(x_v * standard_[k])
};

}  // namespace dnash
