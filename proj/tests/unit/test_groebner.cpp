#include <doctest.h>

#include <random>

#include "dnash/groebner.hpp"
#include "dnash/modp.hpp"
#include "dnash/multimodular.hpp"
#include "dnash/solver.hpp"
#include "support/oracles.hpp"

using namespace dnash;

namespace {

FpPoly fp(std::uint32_t p, std::vector<std::pair<Monomial, std::uint32_t>> t) {
  std::vector<FpPoly::Term> terms(t.begin(), t.end());
  return FpPoly(PrimeField{p}, std::move(terms));
}

Monomial x(int v, unsigned e = 1) { return unit_monomial(v, e); }

std::vector<ZPoly> system_of(const CoeffVector& c) {
  std::vector<ZPoly> out;
  for (const auto& f : advantage_system(c)) out.push_back(f.to_zpoly());
  return out;
}

// Monic reduction of an integer polynomial mod p, ascending.
std::vector<std::uint32_t> monic_mod(const UniPoly& u, std::uint32_t p) {
  const PrimePoly m = PrimePoly::reduce(u.to_int_primitive(), p).monic();
  return m.coefficients();
}

}  // namespace

TEST_CASE("quotient algebra of a two-point ideal") {
  const std::uint32_t p = 101;
  // x0^2 - 1, x1 - x0 - 2: points (1, 3) and (-1, 1).
  const auto q = ModularQuotient::compute({fp(p, {{x(0, 2), 1}, {0, p - 1}}), fp(p, {{x(1), 1}, {x(0), p - 1}, {0, p - 2}})}, 2);
  REQUIRE(q);
  CHECK(q->dimension() == 2);
  CHECK(q->minimal_polynomial(0) == std::vector<std::uint32_t>{p - 1, 0, 1});
  CHECK(q->minimal_polynomial(1) == std::vector<std::uint32_t>{3, p - 4, 1});
  const auto par = q->parametrisation(0);
  REQUIRE(par);
  CHECK((*par)[1] == std::vector<std::uint32_t>{2, 1});
}

TEST_CASE("positive-dimensional ideals are rejected") {
  const std::uint32_t p = 101;
  CHECK_FALSE(ModularQuotient::compute({fp(p, {{x(0) + x(1), 1}})}, 2));
  const auto empty = ModularQuotient::compute({fp(p, {{x(0), 1}}), fp(p, {{x(0), 1}, {0, 1}})}, 1);
  CHECK((!empty || empty->dimension() == 0));
}

TEST_CASE("modular minimal polynomials agree with resultant eliminants") {
  for (int n = 3; n <= 4; ++n)
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      const CoeffVector c = perturb(anchor_coeffs(n), 64, Rational(1, 8), seed);
      const auto zs = system_of(c);
      const SystemSolution sol = solve_system(advantage_system(c), (1u << n) - 1);
      REQUIRE(sol.status == SystemStatus::Ok);
      for (std::uint32_t p : {1000003u, 65521u}) {
        std::vector<FpPoly> fps;
        for (const auto& z : zs) fps.push_back(reduce(z, p));
        const auto q = ModularQuotient::compute(fps, static_cast<unsigned>(n));
        REQUIRE(q);
        CHECK(q->dimension() == static_cast<std::size_t>(n == 3 ? 2 : 9));
        for (int v = 0; v < n; ++v) CHECK(q->minimal_polynomial(v) == monic_mod(sol.eliminants[static_cast<std::size_t>(v)].poly, p));
      }
    }
}

TEST_CASE("certified parametrisation reproduces the eliminants over Q") {
  const CoeffVector c = perturb(anchor_coeffs(4), 64, Rational(1, 8), 3);
  const auto zs = system_of(c);
  const SystemSolution sol = solve_system(advantage_system(c), 15);
  REQUIRE(sol.status == SystemStatus::Ok);
  const auto cs = certified_solution_set(zs, 4, 9, 400);
  REQUIRE(cs);
  REQUIRE(cs->by_variable.size() == 4);
  for (int v = 0; v < 4; ++v) {
    const Parametrisation& par = cs->by_variable[static_cast<std::size_t>(v)];
    CHECK(par.sep == v);
    CHECK(par.minpoly.to_unipoly().primitive() == sol.eliminants[static_cast<std::size_t>(v)].poly);
    CHECK(verify_parametrisation(zs, 4, par));
    // Every equation vanishes at every point: its numerator is a multiple of the minpoly.
    for (const auto& z : zs) {
      const UniPoly h = homogenised_numerator(z, 4, par).to_unipoly();
      CHECK(divides(par.minpoly.to_unipoly(), h));
    }
  }
  // A corrupted parametrisation must fail the exact check.
  Parametrisation bad = cs->by_variable[0];
  auto coeffs = bad.numer[1].coefficients();
  coeffs[0] += 1;
  bad.numer[1] = IntPoly(coeffs);
  std::string why;
  CHECK_FALSE(verify_parametrisation(zs, 4, bad, &why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("rational reconstruction") {
  const Integer m = Integer(1000003) * Integer(999983);
  for (auto [a, b] : std::vector<std::pair<long, long>>{{3, 7}, {-22, 5}, {0, 1}, {1, 1}, {-400, 499}}) {
    // a * b^-1 mod m
    Integer inv;
    mpz_invert(inv.get_mpz_t(), Integer(b).get_mpz_t(), m.get_mpz_t());
    Integer r = Integer(a) * inv % m;
    if (r < 0) r += m;
    const auto q = rational_reconstruction(r, m);
    REQUIRE(q);
    Rational want(a, b);
    want.canonicalize();
    CHECK(*q == want);
  }
  // Out of range: whatever comes back is not the original fraction.
  const Integer small(1000003);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), Integer(5003).get_mpz_t(), small.get_mpz_t());
  const auto q = rational_reconstruction(Integer(5000 * inv % small), small);
  CHECK((!q || *q != Rational(5000, 5003)));
}
