#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "dnash/mpoly.hpp"
#include "dnash/rational.hpp"
#include "dnash/roots.hpp"

namespace dnash {

/// Subset of players as a bitmask, bit j for player j (0-based).
using PlayerSet = std::uint32_t;

inline bool contains(PlayerSet s, int j) { return (s >> j) & 1u; }
inline int popcount(PlayerSet s) { return __builtin_popcount(s); }

inline constexpr int kMaxPlayers = 8;

/// Multi-affine polynomial in x_0..x_{n-1}: sum over subsets s of coeff[s] * prod_{j in s} x_j.
class MultiAffinePoly {
 public:
  MultiAffinePoly() = default;
  explicit MultiAffinePoly(int n);

  int n() const { return n_; }
  const Rational& coeff(PlayerSet s) const { return c_.at(s); }
  void set(PlayerSet s, Rational v) { c_.at(s) = std::move(v); }
  const std::vector<Rational>& coefficients() const { return c_; }

  bool is_zero() const;
  /// Union of the subsets with nonzero coefficient.
  PlayerSet variables() const;

  Rational evaluate(const std::vector<Rational>& x) const;
  /// Exact range over a box; only coordinates the polynomial uses are read.
  Interval range(const std::vector<Interval>& box) const;
  /// Substitutes x_j = value for every j in `fixed`; those variables disappear.
  MultiAffinePoly substitute(PlayerSet fixed, const std::vector<Rational>& values) const;

  /// Integer multiple with coprime coefficients, as a sparse polynomial in x_j.
  ZPoly to_zpoly() const;

  friend bool operator==(const MultiAffinePoly&, const MultiAffinePoly&) = default;

 private:
  int n_ = 0;
  std::vector<Rational> c_;
};

/// The game's coefficient vector c: entry (i, s) is the coefficient of prod_{j in s} x_j
/// in player i's advantage polynomial f_i, for every s not containing i. The same data
/// viewed per player is the multi-affine system.
class CoeffVector {
 public:
  CoeffVector() = default;
  explicit CoeffVector(int n);

  int n() const { return n_; }
  /// Number of legal entries, n * 2^(n-1).
  std::size_t size() const { return static_cast<std::size_t>(n_) << (n_ - 1); }

  const Rational& at(int i, PlayerSet s) const;
  void set(int i, PlayerSet s, Rational v);

  /// f_i as a multi-affine polynomial.
  const MultiAffinePoly& poly(int i) const { return f_.at(static_cast<std::size_t>(i)); }

  bool full_support() const;
  std::size_t support_size() const;

  friend bool operator==(const CoeffVector&, const CoeffVector&) = default;

 private:
  void check(int i, PlayerSet s) const;
  int n_ = 0;
  std::vector<MultiAffinePoly> f_;
};

using MultiAffineSystem = CoeffVector;

/// Integer payoffs u_i(a) on pure profiles a (bit j of a = action of player j), with the
/// multiplier M used to clear denominators.
struct PayoffTensor {
  int n = 0;
  Integer M{1};
  std::vector<std::vector<Integer>> u;  // u[i][a]

  friend bool operator==(const PayoffTensor&, const PayoffTensor&) = default;
};

PayoffTensor make_tensor(int n);

MultiAffineSystem advantage_from_payoffs(const PayoffTensor& g);
/// Zero baseline u_i(0, .) = 0 and u_i(1, v) = M f_i(v) with M the lcm of all denominators.
PayoffTensor payoffs_from_advantage(const MultiAffineSystem& sys);

CoeffVector anchor_coeffs(int n);
/// psi_lambda(c): f_i^{result}(x) = f_i^c(x + lambda).
CoeffVector shift_coeffs(const CoeffVector& c, const std::vector<Rational>& lambda);
/// Adds to every entry an independent nonzero rational k/q with q <= denom_bound and
/// |k/q| <= magnitude; entries that would cancel are redrawn.
CoeffVector perturb(const CoeffVector& c0, long denom_bound, const Rational& magnitude, std::uint64_t seed);

/// Players are 1-based in JSON.
nlohmann::json game_to_json(const CoeffVector& c);
CoeffVector game_from_json(const nlohmann::json& j);
nlohmann::json tensor_to_json(const PayoffTensor& g);
PayoffTensor tensor_from_json(const nlohmann::json& j);

}  // namespace dnash
