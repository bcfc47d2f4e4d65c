#include <doctest.h>

#include <random>

#include "dnash/game.hpp"
#include "support/oracles.hpp"

using namespace dnash;

namespace {

// Expected payoff difference E[u_i(1, a_-i)] - E[u_i(0, a_-i)] by summing over profiles.
Rational brute_advantage(const PayoffTensor& g, int i, const std::vector<Rational>& x) {
  Rational total(0);
  for (PlayerSet a = 0; a < (1u << g.n); ++a) {
    if (contains(a, i)) continue;
    Rational prob(1);
    for (int j = 0; j < g.n; ++j)
      if (j != i) prob *= contains(a, j) ? x[static_cast<std::size_t>(j)] : 1 - x[static_cast<std::size_t>(j)];
    total += prob * Rational(g.u[static_cast<std::size_t>(i)][a | (1u << i)] - g.u[static_cast<std::size_t>(i)][a]);
  }
  return total;
}

PayoffTensor random_tensor(std::mt19937_64& rng, int n, long height) {
  PayoffTensor g = make_tensor(n);
  std::uniform_int_distribution<long> d(-height, height);
  for (auto& row : g.u)
    for (auto& v : row) v = d(rng);
  return g;
}

CoeffVector random_coeffs(std::mt19937_64& rng, int n) {
  CoeffVector c(n);
  for (int i = 0; i < n; ++i)
    for (PlayerSet s = 0; s < (1u << n); ++s)
      if (!contains(s, i)) c.set(i, s, oracle::random_rational(rng, 9, 7));
  return c;
}

}  // namespace

TEST_CASE("matching pennies advantage polynomials") {
  PayoffTensor g = make_tensor(2);
  for (PlayerSet a = 0; a < 4; ++a) {
    const bool match = contains(a, 0) == contains(a, 1);
    g.u[0][a] = match ? 1 : -1;
    g.u[1][a] = match ? -1 : 1;
  }
  const CoeffVector c = advantage_from_payoffs(g);
  CHECK(c.at(0, 0) == -2);
  CHECK(c.at(0, 2) == 4);
  CHECK(c.at(1, 0) == 2);
  CHECK(c.at(1, 1) == -4);
}

TEST_CASE("advantage polynomials match expected payoff differences") {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 5; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      const PayoffTensor g = random_tensor(rng, n, 20);
      const CoeffVector c = advantage_from_payoffs(g);
      std::vector<Rational> x;
      for (int j = 0; j < n; ++j) x.push_back(oracle::random_rational(rng, 5, 9));
      for (int i = 0; i < n; ++i) CHECK(c.poly(i).evaluate(x) == brute_advantage(g, i, x));
    }
}

TEST_CASE("payoff tensor from coefficients is integer and reproduces M * c") {
  std::mt19937_64 rng(12);
  for (int n = 2; n <= 5; ++n) {
    const CoeffVector c = random_coeffs(rng, n);
    const PayoffTensor g = payoffs_from_advantage(c);
    CHECK(g.M >= 1);
    const CoeffVector back = advantage_from_payoffs(g);
    for (int i = 0; i < n; ++i)
      for (PlayerSet s = 0; s < (1u << n); ++s)
        if (!contains(s, i)) CHECK(back.at(i, s) == c.at(i, s) * Rational(g.M));
    // Baseline action earns zero.
    for (int i = 0; i < n; ++i)
      for (PlayerSet a = 0; a < (1u << n); ++a)
        if (!contains(a, i)) CHECK(g.u[static_cast<std::size_t>(i)][a] == 0);
  }
}

TEST_CASE("shift identity: f_c(x + lambda) equals f_shifted(x) on every cube vertex") {
  // A multi-affine polynomial is determined by its values on {0,1}^n.
  std::mt19937_64 rng(13);
  for (int n = 2; n <= 5; ++n)
    for (int trial = 0; trial < 4; ++trial) {
      const CoeffVector c = random_coeffs(rng, n);
      std::vector<Rational> lambda;
      for (int j = 0; j < n; ++j) lambda.push_back(oracle::random_rational(rng, 3, 11));
      const CoeffVector d = shift_coeffs(c, lambda);
      for (PlayerSet v = 0; v < (1u << n); ++v) {
        std::vector<Rational> x, xs;
        for (int j = 0; j < n; ++j) {
          x.push_back(contains(v, j) ? 1 : 0);
          xs.push_back(x.back() + lambda[static_cast<std::size_t>(j)]);
        }
        for (int i = 0; i < n; ++i) CHECK(c.poly(i).evaluate(xs) == d.poly(i).evaluate(x));
      }
    }
}

TEST_CASE("anchor game vanishes at the centre and has sparse support") {
  for (int n = 3; n <= 6; ++n) {
    const CoeffVector c = anchor_coeffs(n);
    const std::vector<Rational> half(static_cast<std::size_t>(n), Rational(1, 2));
    for (int i = 0; i < n; ++i) CHECK(c.poly(i).evaluate(half) == 0);
    CHECK_FALSE(c.full_support());
    CHECK(c.support_size() == static_cast<std::size_t>(2 * n));
  }
}

TEST_CASE("perturbation is deterministic, bounded and fills the support") {
  const CoeffVector a = anchor_coeffs(4);
  const CoeffVector p1 = perturb(a, 64, Rational(1, 8), 7);
  const CoeffVector p2 = perturb(a, 64, Rational(1, 8), 7);
  const CoeffVector p3 = perturb(a, 64, Rational(1, 8), 8);
  CHECK(p1 == p2);
  CHECK_FALSE(p1 == p3);
  CHECK(p1.full_support());
  for (int i = 0; i < 4; ++i)
    for (PlayerSet s = 0; s < 16; ++s) {
      if (contains(s, i)) continue;
      const Rational d = p1.at(i, s) - a.at(i, s);
      CHECK(sgn(d) != 0);
      CHECK(abs(d) <= Rational(1, 8));
      CHECK(d.get_den() <= 64);
    }
  CHECK_THROWS_AS(perturb(a, 64, Rational(0), 1), Error);
}

TEST_CASE("coefficient and tensor JSON round trips with 1-based players") {
  std::mt19937_64 rng(14);
  const CoeffVector c = random_coeffs(rng, 3);
  const auto j = game_to_json(c);
  CHECK(j["coeffs"][0]["i"] == 1);
  CHECK(game_from_json(j) == c);
  const PayoffTensor g = payoffs_from_advantage(c);
  CHECK(tensor_from_json(tensor_to_json(g)) == g);

  auto bad = j;
  bad["coeffs"][0]["i"] = 0;
  CHECK_THROWS_AS(game_from_json(bad), Error);
  bad = j;
  bad["coeffs"].push_back(j["coeffs"][0]);
  CHECK_THROWS_AS(game_from_json(bad), Error);
}

TEST_CASE("substitution fixes players and keeps the rest") {
  std::mt19937_64 rng(15);
  const CoeffVector c = random_coeffs(rng, 4);
  std::vector<Rational> x;
  for (int j = 0; j < 4; ++j) x.push_back(oracle::random_rational(rng, 5, 5));
  const PlayerSet fixed = 0b0101;
  const MultiAffinePoly f = c.poly(1).substitute(fixed, x);
  CHECK((f.variables() & fixed) == 0);
  CHECK(f.evaluate(x) == c.poly(1).evaluate(x));
}
