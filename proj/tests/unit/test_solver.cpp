#include <doctest.h>

#include <algorithm>
#include <random>

#include "dnash/roots.hpp"
#include "dnash/solver.hpp"
#include "support/oracles.hpp"

using namespace dnash;

namespace {

CoeffVector relabel(const CoeffVector& c, const std::vector<int>& perm) {
  const int n = c.n();
  CoeffVector d(n);
  for (int i = 0; i < n; ++i)
    for (PlayerSet s = 0; s < (1u << n); ++s) {
      if (contains(s, i)) continue;
      PlayerSet t = 0;
      for (int j = 0; j < n; ++j)
        if (contains(s, j)) t |= 1u << perm[static_cast<std::size_t>(j)];
      d.set(perm[static_cast<std::size_t>(i)], t, c.at(i, s));
    }
  return d;
}

// Pure profiles where nobody gains by switching, straight from the payoffs.
std::vector<PlayerSet> brute_pure_ne(const PayoffTensor& g) {
  std::vector<PlayerSet> out;
  for (PlayerSet a = 0; a < (1u << g.n); ++a) {
    bool ok = true;
    for (int i = 0; i < g.n && ok; ++i)
      ok = g.u[static_cast<std::size_t>(i)][a] >= g.u[static_cast<std::size_t>(i)][a ^ (1u << i)];
    if (ok) out.push_back(a);
  }
  return out;
}

PayoffTensor random_tensor(std::mt19937_64& rng, int n, long height) {
  PayoffTensor g = make_tensor(n);
  std::uniform_int_distribution<long> d(-height, height);
  for (auto& row : g.u)
    for (auto& v : row) v = d(rng);
  return g;
}

bool all_half(const Equilibrium& e) {
  return std::all_of(e.coords.begin(), e.coords.end(), [](const Interval& iv) { return iv.contains(Rational(1, 2)); });
}

// The box encloses a zero of every equation (interval range check) and each side
// isolates exactly one root of its eliminant.
void check_box(const SystemSolution& sol, const CoeffVector& c, const RootBox& b) {
  std::vector<Interval> full(static_cast<std::size_t>(c.n()));
  for (std::size_t j = 0; j < sol.unknowns.size(); ++j) full[static_cast<std::size_t>(sol.unknowns[j])] = b.intervals[j];
  for (int i = 0; i < c.n(); ++i) {
    const Interval r = c.poly(i).range(full);
    CHECK(r.contains(Rational(0)));
  }
  for (std::size_t j = 0; j < sol.unknowns.size(); ++j) {
    const UniPoly& p = sol.eliminants[j].poly;
    const Interval& iv = b.intervals[j];
    if (iv.is_point()) {
      CHECK(p.sign_at(iv.low) == 0);
    } else {
      SturmSequence s(p);
      CHECK(s.count_roots(iv.low, iv.high) + (p.sign_at(iv.low) == 0) == 1);
    }
  }
}

}  // namespace

TEST_CASE("matching pennies: one mixed equilibrium at (1/2, 1/2)") {
  CoeffVector c(2);
  c.set(0, 0, -2);
  c.set(0, 2, 4);
  c.set(1, 0, 2);
  c.set(1, 1, -4);
  const NEReport r = enumerate_ne(c, pow2(-64));
  CHECK(r.complete);
  REQUIRE(r.equilibria.size() == 1);
  CHECK(pattern_name(r.equilibria[0].pattern) == "MM");
  CHECK(r.equilibria[0].coords[0] == Interval::point(Rational(1, 2)));
  CHECK(eliminate(c, 0).poly == UniPoly{-1, 2});
}

TEST_CASE("anchor games: unique equilibrium at the centre, linear eliminants") {
  for (int n = 2; n <= 4; ++n) {
    const CoeffVector c = anchor_coeffs(n);
    const NEReport r = enumerate_ne(c, pow2(-64));
    CHECK(r.complete);
    CHECK(r.patterns_decided == r.patterns_total);
    REQUIRE(r.equilibria.size() == 1);
    CHECK(r.fully_mixed_count() == 1);
    CHECK(all_half(r.equilibria[0]));
    for (int i = 0; i < n; ++i) CHECK(eliminate(c, i).poly == UniPoly{-1, 2});
  }
}

TEST_CASE("perturbed anchors: eliminant degrees are the derangement numbers") {
  const int expected[] = {0, 0, 1, 2, 9};
  for (int n = 3; n <= 4; ++n)
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const CoeffVector c = perturb(anchor_coeffs(n), 64, Rational(1, 8), seed);
      const SystemSolution sol = solve_system(advantage_system(c), (1u << n) - 1);
      REQUIRE(sol.status == SystemStatus::Ok);
      CHECK_FALSE(sol.undecided);
      for (const auto& e : sol.eliminants) CHECK(e.poly.degree() == expected[n]);
      // Boxes are exactly the real roots: every real root of each eliminant is used once.
      for (std::size_t j = 0; j < sol.unknowns.size(); ++j) {
        const UniPoly& p = sol.eliminants[j].poly;
        const Rational b = cauchy_bound(p);
        CHECK(sturm_isolate(p, Interval(-b, b)).size() == sol.boxes.size());
      }
      for (const auto& b : sol.boxes) check_box(sol, c, b);
    }
}

TEST_CASE("boxes are no wider than the tolerance") {
  const CoeffVector c = perturb(anchor_coeffs(4), 64, Rational(1, 8), 2);
  for (long k : {16L, 64L, 200L}) {
    const auto boxes = solve_boxes(c, pow2(-k));
    REQUIRE_FALSE(boxes.empty());
    for (const auto& b : boxes)
      for (const auto& iv : b.intervals) CHECK(iv.width() <= pow2(-k));
  }
}

TEST_CASE("exact sign at a solution, including exact zeros") {
  const CoeffVector c = perturb(anchor_coeffs(3), 64, Rational(1, 8), 5);
  const SystemSolution sol = solve_system(advantage_system(c), 7);
  REQUIRE(sol.status == SystemStatus::Ok);
  REQUIRE_FALSE(sol.boxes.empty());
  MultiAffinePoly sum(3);
  for (PlayerSet s = 0; s < 8; ++s) sum.set(s, c.poly(0).coeff(s) + c.poly(2).coeff(s));
  MultiAffinePoly below(3), above(3);
  below.set(1, Rational(1));
  below.set(0, Rational(100));   // x_1 + 100 > 0 for real |x_1| < 100
  above.set(2, Rational(1));
  above.set(0, Rational(-100));  // x_2 - 100 < 0
  for (std::size_t b = 0; b < sol.boxes.size(); ++b) {
    CHECK(exact_sign_at(sum, sol, b) == 0);
    CHECK(exact_sign_at(c.poly(1), sol, b) == 0);
    if (abs(sol.boxes[b].intervals[0].high) < 100) CHECK(exact_sign_at(below, sol, b) == 1);
    if (abs(sol.boxes[b].intervals[1].high) < 100) CHECK(exact_sign_at(above, sol, b) == -1);
  }
  // Zero detection where the interval alone cannot decide: x_j minus the exact rational
  // coordinate of the anchor equilibrium.
  const CoeffVector a = anchor_coeffs(3);
  const SystemSolution asol = solve_system(advantage_system(a), 7);
  REQUIRE(asol.boxes.size() == 1);
  MultiAffinePoly h(3);
  h.set(4, Rational(2));
  h.set(0, Rational(-1));
  CHECK(exact_sign_at(h, asol, 0) == 0);
}

TEST_CASE("relabelling players permutes the equilibria") {
  std::mt19937_64 rng(21);
  const std::vector<int> perm{2, 0, 3, 1};
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    const CoeffVector c = perturb(anchor_coeffs(4), 64, Rational(1, 8), seed);
    const CoeffVector d = relabel(c, perm);
    const NEReport r = enumerate_ne(c, pow2(-64));
    const NEReport s = enumerate_ne(d, pow2(-64));
    REQUIRE(r.equilibria.size() == s.equilibria.size());
    for (const auto& e : r.equilibria) {
      bool found = false;
      for (const auto& f : s.equilibria) {
        bool same = true;
        for (int i = 0; i < 4 && same; ++i)
          same = e.pattern[static_cast<std::size_t>(i)] == f.pattern[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] &&
                 e.coords[static_cast<std::size_t>(i)].overlaps(f.coords[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
        found = found || same;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("pure equilibria agree with brute-force best responses") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 2;
    const PayoffTensor g = random_tensor(rng, n, 3);  // small range forces ties
    const NEReport r = enumerate_ne(g, pow2(-64));
    std::vector<PlayerSet> got;
    for (const auto& e : r.equilibria) {
      if (std::any_of(e.pattern.begin(), e.pattern.end(), [](Strategy s) { return s == Strategy::Mixed; })) continue;
      PlayerSet a = 0;
      for (int i = 0; i < n; ++i)
        if (e.pattern[static_cast<std::size_t>(i)] == Strategy::Pure1) a |= 1u << i;
      got.push_back(a);
    }
    std::sort(got.begin(), got.end());
    CHECK(got == brute_pure_ne(g));
  }
}

TEST_CASE("every reported equilibrium satisfies the best-response conditions on its box") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    const PayoffTensor g = random_tensor(rng, 3, 9);
    const CoeffVector c = advantage_from_payoffs(g);
    const NEReport r = enumerate_ne(c, pow2(-64));
    for (const auto& e : r.equilibria) {
      for (int i = 0; i < 3; ++i) {
        const Interval v = c.poly(i).range(e.coords);
        const Strategy s = e.pattern[static_cast<std::size_t>(i)];
        if (s == Strategy::Mixed) {
          CHECK(v.contains(Rational(0)));
          CHECK(e.coords[static_cast<std::size_t>(i)].low > 0);
          CHECK(e.coords[static_cast<std::size_t>(i)].high < 1);
        } else if (s == Strategy::Pure1) {
          CHECK(v.high >= 0);
        } else {
          CHECK(v.low <= 0);
        }
      }
    }
  }
}

TEST_CASE("a degenerate game is reported, not solved") {
  // Every player indifferent: the whole cube is equilibria.
  CoeffVector c(3);
  CHECK_THROWS_AS(eliminate(c, 0), Error);
  const NEReport r = enumerate_ne(c, pow2(-64));
  CHECK_FALSE(r.complete);
  CHECK_FALSE(r.degenerate_patterns.empty());
}

TEST_CASE("pattern indexing puts player 1 first") {
  CHECK(pattern_name(pattern_from_index(3, 0)) == "000");
  CHECK(pattern_name(pattern_from_index(3, 26)) == "MMM");
  CHECK(pattern_name(pattern_from_index(3, 9)) == "100");
  CHECK(pattern_name(pattern_from_index(3, 5)) == "01M");
}
