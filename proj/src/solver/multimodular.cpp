#include "dnash/multimodular.hpp"

#include <stdexcept>

#include "dnash/modp.hpp"

namespace dnash {

MultimodularSolver::MultimodularSolver(std::vector<ZPoly> polys, unsigned vars, std::size_t expected_dim)
    : polys_(std::move(polys)), vars_(vars), dim_(expected_dim) {}

bool MultimodularSolver::add_prime() {
  const std::size_t index = next_prime_++;
  const std::uint32_t p = reconstruction_primes(index + 1)[index];
  ++tried_;
  std::vector<FpPoly> fp;
  for (const auto& z : polys_) {
    FpPoly r = reduce(z, p);
    // A prime that kills a coefficient changes the supports; skip it.
    if (r.size() != z.size()) return false;
    fp.push_back(std::move(r));
  }
  auto q = ModularQuotient::compute(fp, vars_, dim_ == 0 ? 4096 : dim_);
  if (!q || q->dimension() == 0) return false;
  if (dim_ == 0) dim_ = q->dimension();
  if (q->dimension() != dim_) return false;

  const std::size_t d = dim_;
  std::vector<std::vector<std::uint32_t>> images(vars_);
  for (unsigned sep = 0; sep < vars_; ++sep) {
    auto par = q->parametrisation(static_cast<int>(sep));
    if (!par) return false;
    PrimePoly g(p, q->minimal_polynomial(static_cast<int>(sep)));
    if (static_cast<std::size_t>(g.degree()) != d) return false;
    PrimePoly dg = g.derivative();
    std::vector<std::uint32_t>& img = images[sep];
    img.assign(d * (1 + vars_), 0);
    for (std::size_t k = 0; k < d; ++k) img[k] = g.coefficients()[k];
    for (unsigned w = 0; w < vars_; ++w) {
      if (w == sep) continue;
      PrimePoly psi = (PrimePoly(p, (*par)[w]) * dg).mod(g);
      const auto& c = psi.coefficients();
      for (std::size_t k = 0; k < c.size(); ++k) img[d * (1 + w) + k] = c[k];
    }
  }

  if (residues_.empty()) residues_.assign(vars_, std::vector<Integer>(d * (1 + vars_)));
  // Garner step: x <- x + m * ((r - x) * m^-1 mod p).
  const PrimeField f{p};
  const std::uint32_t minv = f.inv(static_cast<std::uint32_t>(mpz_fdiv_ui(modulus_.get_mpz_t(), p)));
  for (unsigned sep = 0; sep < vars_; ++sep)
    for (std::size_t k = 0; k < images[sep].size(); ++k) {
      Integer& x = residues_[sep][k];
      const std::uint32_t xr = static_cast<std::uint32_t>(mpz_fdiv_ui(x.get_mpz_t(), p));
      const std::uint32_t delta = f.mul(f.sub(images[sep][k], xr), minv);
      if (delta) x += modulus_ * delta;
    }
  modulus_ *= p;
  ++used_;
  return true;
}

std::optional<Rational> rational_reconstruction(const Integer& a, const Integer& m) {
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
  Integer r0 = m, r1 = a % m, t0 = 0, t1 = 1, q, tmp;
  if (r1 < 0) r1 += m;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (abs(t1) > bound || sgn(t1) == 0) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rational out(r1, t1);
  out.canonicalize();
  return out;
}

namespace {

// Reconstructs a vector of residues with a shared denominator: once some denominator
// is known, later entries usually become integers after scaling by it.
std::optional<std::vector<Rational>> reconstruct_all(const std::vector<Integer>& res, std::size_t from,
                                                     std::size_t count, const Integer& m) {
  std::vector<Rational> out;
  out.reserve(count);
  Integer den = 1;
  for (std::size_t k = from; k < from + count; ++k) {
    Integer scaled = (res[k] * den) % m;
    auto r = rational_reconstruction(scaled, m);
    if (!r) return std::nullopt;
    Rational v = *r / den;
    v.canonicalize();
    out.push_back(v);
    den = lcm(den, Integer(v.get_den()));
  }
  return out;
}

IntPoly clear_denominators(const std::vector<Rational>& c, Integer* den) {
  Integer l = 1;
  for (const auto& x : c) l = lcm(l, Integer(x.get_den()));
  std::vector<Integer> out;
  for (const auto& x : c) out.push_back(Integer(x * l));
  if (den) *den = l;
  return IntPoly(std::move(out));
}

}  // namespace

std::optional<Parametrisation> MultimodularSolver::reconstruct(int sep) const {
  if (residues_.empty()) return std::nullopt;
  const std::size_t d = dim_;
  const auto& res = residues_.at(static_cast<std::size_t>(sep));
  auto g = reconstruct_all(res, 0, d, modulus_);
  if (!g) return std::nullopt;
  g->push_back(Rational(1));
  Parametrisation par;
  par.sep = sep;
  par.minpoly = clear_denominators(*g, nullptr).primitive_part();
  par.numer.assign(vars_, IntPoly());
  par.denom.assign(vars_, Integer(1));
  for (unsigned w = 0; w < vars_; ++w) {
    if (static_cast<int>(w) == sep) continue;
    auto c = reconstruct_all(res, d * (1 + w), d, modulus_);
    if (!c) return std::nullopt;
    // The residues describe minpoly' for the monic minimal polynomial; rescale to the primitive one.
    std::vector<Integer> num = clear_denominators(*c, &par.denom[w]).coefficients();
    for (auto& x : num) x *= par.minpoly.leading();
    Integer g = par.denom[w];
    for (const auto& x : num) g = gcd(g, x);
    for (auto& x : num) x /= g;
    par.denom[w] /= g;
    par.numer[w] = IntPoly(std::move(num));
  }
  return par;
}

namespace {

using Dense = std::vector<Integer>;

Dense mul(const Dense& a, const Dense& b) {
  if (a.empty() || b.empty()) return {};
  Dense out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return out;
}

void add_into(Dense& a, const Dense& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

// Whether g divides a in Z[t], g primitive (so in Q[t] as well).
bool divisible(Dense a, const Dense& g) {
  const std::size_t dg = g.size() - 1;
  const Integer& lc = g.back();
  Integer q;
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
  while (a.size() > dg) {
    const std::size_t shift = a.size() - 1 - dg;
    if (!mpz_divisible_p(a.back().get_mpz_t(), lc.get_mpz_t())) return false;
    mpz_divexact(q.get_mpz_t(), a.back().get_mpz_t(), lc.get_mpz_t());
    for (std::size_t k = 0; k <= dg; ++k) mpz_submul(a[shift + k].get_mpz_t(), q.get_mpz_t(), g[k].get_mpz_t());
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
  }
  return a.empty();
}

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

}  // namespace

IntPoly homogenised_numerator(const ZPoly& f, unsigned vars, const Parametrisation& par) {
  const Dense& g = par.minpoly.coefficients();
  const int d = par.minpoly.degree();
  // Variable w sits at the point (numer_w : denom_w * G').
  Dense dg(static_cast<std::size_t>(d));
  for (int k = 1; k <= d; ++k) dg[static_cast<std::size_t>(k - 1)] = g[static_cast<std::size_t>(k)] * k;
  std::vector<int> vs;
  for (unsigned w = 0; w < vars; ++w) {
    const int e = f.degree(static_cast<int>(w));
    if (e > 1) throw std::invalid_argument("homogenised_numerator: polynomial is not multi-affine");
    if (e == 1) vs.push_back(static_cast<int>(w));
  }
  auto num = [&](int w) -> Dense {
    if (w == par.sep) return {Integer(0), Integer(1)};
    return par.numer[static_cast<std::size_t>(w)].coefficients();
  };
  auto den = [&](int w) -> Dense {
    if (w == par.sep) return {Integer(1)};
    Dense out = dg;
    for (auto& c : out) c *= par.denom[static_cast<std::size_t>(w)];
    return out;
  };
  // Dense table over subsets of vs; fold one variable at a time.
  std::vector<Dense> table(std::size_t{1} << vs.size());
  for (const auto& [mono, c] : f.terms()) {
    std::size_t s = 0;
    for (std::size_t k = 0; k < vs.size(); ++k)
      if (exponent_of(mono, vs[k]) == 1) s |= std::size_t{1} << k;
    table[s] = {c};
  }
  for (std::size_t k = vs.size(); k-- > 0;) {
    const std::size_t half = std::size_t{1} << k;
    const Dense nw = num(vs[k]), dw = den(vs[k]);
    std::vector<Dense> next(half);
    for (std::size_t s = 0; s < half; ++s) {
      next[s] = mul(table[s], dw);
      add_into(next[s], mul(table[s | half], nw));
    }
    table = std::move(next);
  }
  return IntPoly(std::move(table[0]));
}

bool verify_parametrisation(const std::vector<ZPoly>& polys, unsigned vars, const Parametrisation& par,
                            std::string* why) {
  const Dense g = par.minpoly.coefficients();
  const int d = par.minpoly.degree();
  if (d < 1) return fail(why, "minimal polynomial is constant");
  if (sgn(g[0]) == 0) return fail(why, "separating coordinate vanishes at a point");

  // Squarefreeness and coordinates off the axes, certified modulo one prime.
  bool checked = false;
  for (std::uint32_t p : reconstruction_primes(64)) {
    if (mpz_fdiv_ui(g.back().get_mpz_t(), p) == 0) continue;
    PrimePoly gp = PrimePoly::reduce(par.minpoly, p);
    if (!gcd(gp, gp.derivative()).is_one()) continue;
    bool ok = true;
    for (unsigned w = 0; w < vars && ok; ++w) {
      if (static_cast<int>(w) == par.sep) continue;
      PrimePoly np = PrimePoly::reduce(par.numer[w], p);
      ok = !np.is_zero() && gcd(gp, np).is_one();
    }
    if (!ok) continue;
    checked = true;
    break;
  }
  if (!checked) return fail(why, "no prime certifies squarefreeness and nonzero coordinates");

  for (std::size_t m = 0; m < polys.size(); ++m)
    if (!divisible(homogenised_numerator(polys[m], vars, par).coefficients(), g))
      return fail(why, "equation " + std::to_string(m + 1) + " not satisfied");
  return true;
}

std::optional<CertifiedSolutionSet> certified_solution_set(const std::vector<ZPoly>& polys, unsigned vars,
                                                           std::size_t expected_dim, std::size_t max_primes) {
  MultimodularSolver solver(polys, vars, expected_dim);
  std::vector<std::optional<Parametrisation>> last(vars);
  std::vector<bool> verified(vars, false);
  CertifiedSolutionSet out;
  out.by_variable.resize(vars);
  std::size_t checkpoint = 4;
  while (solver.primes_used() < max_primes) {
    if (solver.primes_tried() > 2 * max_primes + 16) return std::nullopt;
    if (!solver.add_prime()) continue;
    if (solver.primes_used() < checkpoint) continue;
    checkpoint += std::max<std::size_t>(2, checkpoint / 4);
    bool all = true;
    for (unsigned sep = 0; sep < vars; ++sep) {
      if (verified[sep]) continue;
      auto cand = solver.reconstruct(static_cast<int>(sep));
      // Only verify a candidate that survived one more batch of primes unchanged.
      const bool stable = cand && last[sep] && cand->minpoly == last[sep]->minpoly &&
                          cand->numer == last[sep]->numer && cand->denom == last[sep]->denom;
      last[sep] = cand;
      if (stable && verify_parametrisation(polys, vars, *cand)) {
        verified[sep] = true;
        out.by_variable[sep] = std::move(*cand);
      } else {
        all = false;
      }
    }
    if (all) {
      out.primes = solver.primes_used();
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace dnash
