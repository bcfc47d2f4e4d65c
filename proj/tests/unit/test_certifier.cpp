#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "dnash/certifier.hpp"
#include "dnash/modp.hpp"
#include "support/oracles.hpp"

using namespace dnash;

namespace {

// Permutations of n points without fixed points, counted one by one.
long brute_derangements(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  long count = 0;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = p[static_cast<std::size_t>(i)] != i;
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

std::vector<std::vector<int>> j_minus_i(int n) {
  std::vector<std::vector<int>> a(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 1));
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
  return a;
}

const UniPoly selmer9{-1, -1, 0, 0, 0, 0, 0, 0, 0, 1};
const UniPoly radical8{-7, 0, 32, 0, 128, 0, -2048, 0, 4096};

}  // namespace

TEST_CASE("derangement numbers") {
  CHECK(derangement(0) == 1);
  CHECK(derangement(1) == 0);
  CHECK(derangement(4) == 9);
  CHECK(derangement(5) == 44);
  for (int n = 0; n <= 8; ++n) CHECK(derangement(n) == brute_derangements(n));
  // Nearest integer to n!/e, with e from its series (error far below 1/2 here).
  for (int n = 1; n <= 12; ++n) {
    Rational fact(1), inv_e(0), term(1);
    for (int k = 1; k <= n; ++k) fact *= k;
    for (int k = 0; k <= 40; ++k) {
      inv_e += (k % 2 ? -term : term);
      term /= k + 1;
    }
    const Rational v = fact * inv_e + Rational(1, 2);
    CHECK(derangement(n) == Integer(v.get_num() / v.get_den()));
  }
}

TEST_CASE("mixed volume and permanent equal the derangement numbers") {
  const long expected[] = {0, 0, 1, 2, 9, 44, 265, 1854, 14833, 133496, 1334961};
  for (int n = 2; n <= 10; ++n) {
    const CountCheck c = count_check(n);
    CHECK(c.agree());
    CHECK(c.mixed_volume == expected[n]);
  }
  for (int n = 1; n <= 7; ++n) CHECK(permanent_j_minus_i(n) == Integer(oracle::brute_force_permanent(j_minus_i(n))));
  CHECK_THROWS_AS(mixed_volume_full(1), Error);
  CHECK_THROWS_AS(mixed_volume_full(11), Error);
}

TEST_CASE("density") {
  const DensityReport s = check_dense(selmer9);
  CHECK_FALSE(s.dense());
  CHECK(s.zero_indices == std::vector<int>{2, 3, 4, 5, 6, 7, 8});
  CHECK(check_dense(UniPoly{1, 3, 1}).dense());
  CHECK(check_dense(radical8).zero_indices == std::vector<int>{1, 3, 5, 7});
}

TEST_CASE("irreducibility") {
  const auto a = certify_irreducible(selmer9, 500);
  CHECK(a.verdict == IrreducibilityResult::Verdict::Irreducible);
  CHECK(cycle_type(selmer9, a.witness_prime)->size() == 1);

  const auto b = certify_irreducible(UniPoly{-1, 0, 1}, 200);
  CHECK(b.verdict == IrreducibilityResult::Verdict::Reducible);
  REQUIRE(b.rational_root);
  CHECK(UniPoly({-1, 0, 1}).eval(*b.rational_root) == 0);

  const auto c = certify_irreducible(UniPoly{-2, 0, 1}, 200);
  CHECK(c.verdict == IrreducibilityResult::Verdict::Irreducible);
  CHECK(c.witness_prime == 3);

  // (t^2 + 1)(t^2 + 2): no rational root, no single-factor prime; never called reducible
  // without an exhibited factor.
  const auto d = certify_irreducible(UniPoly{2, 0, 3, 0, 1}, 200);
  CHECK(d.verdict == IrreducibilityResult::Verdict::Inconclusive);

  // Rational root with a non-trivial denominator.
  const auto e = certify_irreducible(UniPoly{-3, 5, 0, 7}.primitive() * UniPoly{-2, 3}, 100);
  CHECK(e.verdict == IrreducibilityResult::Verdict::Reducible);
  CHECK(*e.rational_root == Rational(2, 3));
}

TEST_CASE("small-degree irreducibility agrees with rational-root analysis") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int deg = 2 + trial % 2;  // degree 2 and 3: irreducible iff no rational root
    UniPoly p = oracle::random_poly(rng, deg, 9, 1).primitive();
    if (squarefree_part(p).degree() != deg) continue;
    const auto r = certify_irreducible(p, 300);
    // Brute-force rational roots a/b with a | p(0), b | lc.
    const IntPoly q = p.to_int_primitive();
    bool has_root = sgn(q.coefficients().front()) == 0;
    const long a0 = Integer(abs(q.coefficients().front())).get_si(), lc = Integer(abs(q.leading())).get_si();
    for (long a = 1; a <= a0 && !has_root; ++a)
      for (long b = 1; b <= lc && !has_root; ++b)
        if (a0 % a == 0 && lc % b == 0)
          has_root = q.sign_at(Rational(a, b)) == 0 || q.sign_at(Rational(-a, b)) == 0;
    if (has_root) CHECK(r.verdict == IrreducibilityResult::Verdict::Reducible);
    else CHECK(r.verdict == IrreducibilityResult::Verdict::Irreducible);
  }
}

TEST_CASE("symmetric group certificates") {
  const auto g = certify_full_symmetric(selmer9, {500});
  CHECK(g.verdict == GaloisCertificate::Verdict::CertifiedSymmetric);
  CHECK(g.rule == "jordan");
  // Every recorded cycle type re-verifies and shows its role.
  for (const auto& e : g.evidence) {
    REQUIRE(e.prime != 0);
    CHECK(*cycle_type(selmer9, e.prime) == e.cycle_type);
    if (e.role == EvidenceRole::TransitivityDCycle) CHECK(e.cycle_type == std::vector<int>{9});
    if (e.role == EvidenceRole::JordanQCycle) CHECK(jordan_part(e.cycle_type, 9) == 5);
    if (e.role == EvidenceRole::OddPermutation) CHECK(is_odd_permutation(e.cycle_type));
  }

  CHECK(certify_full_symmetric(radical8).verdict == GaloisCertificate::Verdict::Inconclusive);
  CHECK(certify_full_symmetric(UniPoly{1, 0, 0, 0, 1}).verdict == GaloisCertificate::Verdict::Inconclusive);
  CHECK(certify_full_symmetric(UniPoly{-1, 0, 1}).verdict == GaloisCertificate::Verdict::Inconclusive);

  const auto two = certify_full_symmetric(UniPoly{-2, 0, 1});
  CHECK(two.verdict == GaloisCertificate::Verdict::CertifiedSymmetric);
  CHECK(two.rule == "small-degree");
  CHECK_THROWS_AS(certify_full_symmetric(UniPoly{1, 1}), Error);
}

TEST_CASE("small-degree rule separates S_D from its transitive subgroups") {
  // x^5 - 2: Galois group AGL(1, 5), which is 2-transitive and contains odd
  // permutations but no transposition.
  CHECK(certify_full_symmetric(UniPoly{-2, 0, 0, 0, 0, 1}).verdict == GaloisCertificate::Verdict::Inconclusive);
  // x^5 - x - 1 has group S_5.
  CHECK(certify_full_symmetric(UniPoly{-1, -1, 0, 0, 0, 1}).verdict == GaloisCertificate::Verdict::CertifiedSymmetric);
  // x^3 - 3x - 1 is cyclic of order 3; x^3 - 2 is S_3.
  CHECK(certify_full_symmetric(UniPoly{-1, -3, 0, 1}).verdict == GaloisCertificate::Verdict::Inconclusive);
  CHECK(certify_full_symmetric(UniPoly{-2, 0, 0, 1}).verdict == GaloisCertificate::Verdict::CertifiedSymmetric);
  // x^4 + x + 1 has group S_4; x^4 - 2 is dihedral.
  CHECK(certify_full_symmetric(UniPoly{1, 1, 0, 0, 1}).verdict == GaloisCertificate::Verdict::CertifiedSymmetric);
  CHECK(certify_full_symmetric(UniPoly{-2, 0, 0, 0, 1}).verdict == GaloisCertificate::Verdict::Inconclusive);
}

TEST_CASE("cycle type rules") {
  CHECK(is_odd_permutation({2}));
  CHECK_FALSE(is_odd_permutation({2, 2}));
  CHECK(is_odd_permutation({1, 8}));
  CHECK(jordan_part({1, 3, 5}, 9) == 5);
  CHECK(jordan_part({5, 4}, 9) == 5);
  CHECK(jordan_part({7, 2}, 9) == 0);    // 7 = D - 2 is outside the range
  CHECK(jordan_part({23, 21}, 44) == 23);
  CHECK(jordan_part({3, 3, 3}, 9) == 0);
  CHECK(powers_to_transposition({2, 1, 3}));
  CHECK_FALSE(powers_to_transposition({2, 2}));
  CHECK_FALSE(powers_to_transposition({2, 4}));
}

TEST_CASE("instance certificate on the anchor game fails the degree clause") {
  const CoeffVector c = anchor_coeffs(4);
  const SystemSolution sol = solve_system(advantage_system(c), 15);
  const NEReport ne = enumerate_ne(c, pow2(-64), &sol);
  const InstanceCertificate cert = certify_instance(c, sol.eliminants, ne);
  CHECK_FALSE(cert.pass());
  CHECK(cert.first_failure() == "degree");
  for (const auto& cl : cert.clauses)
    if (cl.name == "unique-ne" || cl.name == "fully-mixed" || cl.name == "root-of-eliminant") CHECK(cl.pass);
}

TEST_CASE("instance certificate on a perturbed n = 4 game") {
  const CoeffVector c = perturb(anchor_coeffs(4), 64, Rational(1, 8), 1);
  const SystemSolution sol = solve_system(advantage_system(c), 15);
  const NEReport ne = enumerate_ne(c, pow2(-64), &sol);
  const InstanceCertificate cert = certify_instance(c, sol.eliminants, ne);
  CHECK(cert.pass());
  CHECK(cert.irradical);
  for (const auto& p : cert.players) {
    CHECK(p.poly.degree() == 9);
    REQUIRE(p.galois);
    for (const auto& e : p.galois->evidence)
      if (e.prime) CHECK(*cycle_type(p.poly, e.prime) == e.cycle_type);
  }
  const auto j = certificate_to_json(cert);
  CHECK(j["pass"] == true);
  CHECK(j["clauses"].size() == 7);

  // A sparse eliminant trips the density clause by name.
  auto elim = sol.eliminants;
  elim[2].poly = UniPoly{-1, -1, 0, 0, 0, 0, 0, 0, 0, 1};
  const InstanceCertificate bad = certify_instance(c, elim, ne);
  CHECK(bad.first_failure() == "density");
}
