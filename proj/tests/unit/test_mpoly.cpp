#include <doctest.h>

#include <random>

#include "dnash/mpoly.hpp"
#include "support/oracles.hpp"

using namespace dnash;

namespace {

ZPoly random_zpoly(std::mt19937_64& rng, unsigned vars, int max_deg, int terms, long height) {
  std::uniform_int_distribution<long> coef(-height, height);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::vector<ZPoly::Term> t;
  for (int k = 0; k < terms; ++k) {
    Monomial m = 0;
    for (int v = 0; v < kMaxVars; ++v)
      if ((vars >> v) & 1u) m += unit_monomial(v, static_cast<unsigned>(deg(rng)));
    t.emplace_back(m, Integer(coef(rng)));
  }
  return ZPoly(IntegerRing{}, std::move(t));
}

Integer eval_all(const ZPoly& p, const std::vector<long>& point) {
  ZPoly r = p;
  for (int v = 0; v < static_cast<int>(point.size()); ++v) r = r.evaluate(v, Integer(point[static_cast<std::size_t>(v)]));
  REQUIRE(r.is_constant());
  return r.constant_term();
}

UniPoly specialize(const ZPoly& p, int keep, const std::vector<long>& point) {
  ZPoly r = p;
  for (int v = 0; v < static_cast<int>(point.size()); ++v)
    if (v != keep) r = r.evaluate(v, Integer(point[static_cast<std::size_t>(v)]));
  std::vector<Rational> c(static_cast<std::size_t>(std::max(r.degree(keep), 0)) + 1);
  for (const auto& [m, e] : r.terms()) c[static_cast<std::size_t>(exponent_of(m, keep))] = e;
  return UniPoly(std::move(c));
}

}  // namespace

TEST_CASE("monomial packing is lex order") {
  CHECK(unit_monomial(0) > unit_monomial(1, 7));
  CHECK(exponent_of(unit_monomial(3, 5) + unit_monomial(1, 2), 3) == 5);
}

TEST_CASE("sparse arithmetic identities") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const ZPoly a = random_zpoly(rng, 0b111, 2, 6, 9), b = random_zpoly(rng, 0b111, 2, 6, 9), c = random_zpoly(rng, 0b111, 2, 6, 9);
    CHECK((a + b) - b == a);
    CHECK(a * (b + c) == a * b + a * c);
    const std::vector<long> pt{2, -3, 5};
    CHECK(eval_all(a * b, pt) == eval_all(a, pt) * eval_all(b, pt));
    CHECK(ZPoly::from_coefficients_in(1, a.coefficients_in(1)) == a);
  }
  const ZPoly x0 = ZPoly::variable(IntegerRing{}, 0), x1 = ZPoly::variable(IntegerRing{}, 1);
  const ZPoly p = x0 * x0 * x1 + x0 * x1 * x1 * x1;
  CHECK(p.strip_monomial(0b11) == x0 + x1 * x1);
  CHECK(p.strip_monomial(0b10) == p.strip_monomial(0b11) * x0);
  CHECK(to_string(x0 * x0 - x1) == "x0^2 - x1");
}

TEST_CASE("affine resultant eliminates the variable") {
  // Res_x1(x0*x1 - 1, x1 - x2) = x0*x2 - 1 up to sign.
  const IntegerRing z;
  const ZPoly x0 = ZPoly::variable(z, 0), x1 = ZPoly::variable(z, 1), x2 = ZPoly::variable(z, 2);
  const ZPoly one = ZPoly::constant(z, Integer(1));
  const ZPoly r = resultant(x0 * x1 - one, x1 - x2, 1);
  CHECK(primitive(r) == x0 * x2 - one);
}

TEST_CASE("multivariate resultant specializes to the Sylvester determinant") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long> pick(-4, 4);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned vars = trial % 2 ? 0b111u : 0b1111u;
    const int v = 1;
    const ZPoly g = random_zpoly(rng, vars, 1 + trial % 3, 7, 20);
    const ZPoly h = random_zpoly(rng, vars, 2 + trial % 2, 7, 20);
    if (g.degree(v) < 1 || h.degree(v) < 1) continue;
    const ZPoly r = resultant(g, h, v);
    CHECK_FALSE(r.uses(v));
    for (int probe = 0; probe < 3; ++probe) {
      std::vector<long> pt{pick(rng), 0, pick(rng), pick(rng)};
      const UniPoly gs = specialize(g, v, pt), hs = specialize(h, v, pt);
      if (gs.degree() != g.degree(v) || hs.degree() != h.degree(v)) continue;
      pt[1] = 0;
      CHECK(Rational(eval_all(r, pt)) == oracle::sylvester_resultant(gs, hs));
    }
    // The modular route agrees with the integer one.
    const std::uint32_t p = reconstruction_primes(3)[2];
    if (!reduce(g.coefficients_in(v).back(), p).is_zero() && !reduce(h.coefficients_in(v).back(), p).is_zero())
      CHECK(resultant(reduce(g, p), reduce(h, p), v) == reduce(r, p));
  }
}
