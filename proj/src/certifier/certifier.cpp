#include "dnash/certifier.hpp"

#include <algorithm>

#include "dnash/modp.hpp"
#include "dnash/poly_json.hpp"
#include "dnash/roots.hpp"

namespace dnash {

Integer derangement(int n) {
  if (n < 0) throw Error("derangement: n must be non-negative");
  Integer a(1), b(0);  // !0, !1
  if (n == 0) return a;
  for (int k = 2; k <= n; ++k) {
    Integer c = Integer(k - 1) * (a + b);
    a = b;
    b = c;
  }
  return b;
}

Integer mixed_volume_full(int n) {
  if (n < 2 || n > 10) throw Error("mixed_volume_full: n must be in [2, 10]");
  // coef[m]: coefficient of the multilinear monomial prod_{i in m} l_i; other
  // monomials can never reach l_1...l_n and are dropped.
  std::vector<Integer> coef(std::size_t{1} << n, 0);
  coef[0] = 1;
  for (int j = 0; j < n; ++j) {
    std::vector<Integer> next(coef.size(), 0);
    for (std::size_t m = 0; m < coef.size(); ++m) {
      if (coef[m] == 0) continue;
      for (int i = 0; i < n; ++i)
        if (i != j && !((m >> i) & 1u)) next[m | (std::size_t{1} << i)] += coef[m];
    }
    coef = std::move(next);
  }
  return coef.back();
}

Integer permanent_j_minus_i(int n) {
  if (n < 1 || n > 20) throw Error("permanent_j_minus_i: n must be in [1, 20]");
  // Ryser: perm A = (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} a_ij.
  Integer total(0);
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    const int size = __builtin_popcount(s);
    Integer prod(1);
    for (int i = 0; i < n && prod != 0; ++i) prod *= size - static_cast<int>((s >> i) & 1u);
    if (size % 2) total -= prod;
    else total += prod;
  }
  return n % 2 ? Integer(-total) : total;
}

CountCheck count_check(int n) {
  return {n, derangement(n), mixed_volume_full(n), permanent_j_minus_i(n)};
}

DensityReport check_dense(const UniPoly& p) {
  if (p.is_zero()) throw Error("check_dense: zero polynomial");
  DensityReport r{p, {}};
  for (int k = 0; k <= p.degree(); ++k)
    if (sgn(p.coeff(static_cast<std::size_t>(k))) == 0) r.zero_indices.push_back(k);
  return r;
}

namespace {

// Degrees d with some sub-multiset of `type` summing to d.
std::vector<bool> subset_sums(const std::vector<int>& type, int D) {
  std::vector<bool> ok(static_cast<std::size_t>(D) + 1, false);
  ok[0] = true;
  for (int part : type)
    for (int d = D; d >= part; --d)
      if (ok[static_cast<std::size_t>(d - part)]) ok[static_cast<std::size_t>(d)] = true;
  return ok;
}

// A rational root of squarefree integer q, if any. Any root a/b has b | lc, so lc * root
// is an integer and roots are separated by at least 1 / lc^2.
std::optional<Rational> find_rational_root(const IntPoly& q) {
  const UniPoly u = q.to_unipoly();
  const Integer lc = abs(q.leading());
  if (sgn(q.coefficients().front()) == 0) return Rational(0);
  const Rational b = cauchy_bound(u);
  for (Interval iv : sturm_isolate(u, Interval(-b, b))) {
    iv = refine_root(q, iv, Rational(1, lc) / 2);
    if (iv.is_point()) return iv.low;
    const Rational lo = iv.low * lc, hi = iv.high * lc;
    Integer m;
    mpz_cdiv_q(m.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (m > hi) continue;
    Rational r(m, lc);
    r.canonicalize();
    if (q.sign_at(r) == 0) return r;
  }
  return std::nullopt;
}

bool prime_small(int q) { return q >= 2 && is_prime(static_cast<std::uint64_t>(q)); }

bool jordan_range_nonempty(int D) {
  for (int q = D / 2 + 1; q < D - 2; ++q)
    if (2 * q > D && prime_small(q)) return true;
  return false;
}

bool is_square(const Integer& z) { return sgn(z) >= 0 && mpz_perfect_square_p(z.get_mpz_t()); }

// Nonsquare discriminant of squarefree q means the group is not inside A_D.
bool discriminant_nonsquare(const IntPoly& q) {
  const UniPoly u = q.to_unipoly();
  const int D = u.degree();
  Rational disc = resultant(u, u.derivative()) / u.leading();
  if ((D * (D - 1) / 2) % 2) disc = -disc;
  return !(is_square(disc.get_num()) && is_square(disc.get_den()));
}

}  // namespace

IrreducibilityResult certify_irreducible(const UniPoly& p, std::size_t prime_budget) {
  if (p.degree() < 1) throw Error("certify_irreducible: polynomial must have positive degree");
  const IntPoly q = p.to_int_primitive();
  const int D = q.degree();
  IrreducibilityResult res;
  std::vector<bool> possible(static_cast<std::size_t>(D) + 1, true);
  for (std::uint32_t prime : first_primes(prime_budget)) {
    ++res.primes_scanned;
    const auto type = cycle_type(q, prime);
    if (!type) continue;
    if (type->size() == 1) {
      res.verdict = IrreducibilityResult::Verdict::Irreducible;
      res.witness_prime = prime;
      res.possible_factor_degrees = {0, D};
      return res;
    }
    const auto sums = subset_sums(*type, D);
    for (int d = 0; d <= D; ++d) possible[static_cast<std::size_t>(d)] = possible[static_cast<std::size_t>(d)] && sums[static_cast<std::size_t>(d)];
  }
  for (int d = 0; d <= D; ++d)
    if (possible[static_cast<std::size_t>(d)]) res.possible_factor_degrees.push_back(d);
  if (possible[1] || possible[static_cast<std::size_t>(D - 1)]) {
    if (auto r = find_rational_root(q)) {
      res.verdict = IrreducibilityResult::Verdict::Reducible;
      res.rational_root = *r;
    }
  }
  return res;
}

std::string verdict_name(IrreducibilityResult::Verdict v) {
  switch (v) {
    case IrreducibilityResult::Verdict::Irreducible: return "Irreducible";
    case IrreducibilityResult::Verdict::Reducible: return "Reducible";
    default: return "Inconclusive";
  }
}

std::string role_name(EvidenceRole r) {
  switch (r) {
    case EvidenceRole::TransitivityDCycle: return "transitivity-Dcycle";
    case EvidenceRole::JordanQCycle: return "jordan-qcycle";
    case EvidenceRole::OddPermutation: return "odd-permutation";
    case EvidenceRole::DoublyTransitive: return "doubly-transitive-(D-1)cycle";
    case EvidenceRole::Transposition: return "transposition";
    default: return "nonsquare-discriminant";
  }
}

bool is_odd_permutation(const std::vector<int>& type) {
  int even = 0;
  for (int part : type) even += part % 2 == 0;
  return even % 2 == 1;
}

int jordan_part(const std::vector<int>& type, int D) {
  int found = 0;
  for (int part : type) {
    if (2 * part > D && part < D - 2 && prime_small(part)) {
      if (found) return 0;
      found = part;
    }
  }
  if (!found) return 0;
  int hits = 0;
  for (int part : type) hits += part % found == 0;
  return hits == 1 ? found : 0;
}

bool powers_to_transposition(const std::vector<int>& type) {
  int twos = 0;
  for (int part : type) {
    if (part == 2) ++twos;
    else if (part % 2 == 0) return false;
  }
  return twos == 1;
}

GaloisCertificate certify_full_symmetric(const UniPoly& p, const GaloisOptions& opts) {
  if (p.degree() < 2) throw Error("certify_full_symmetric: degree must be at least 2");
  const IntPoly q = p.to_int_primitive();
  const int D = q.degree();
  GaloisCertificate cert;
  cert.poly = q.to_unipoly();
  cert.degree = D;
  const bool jordan = jordan_range_nonempty(D);
  cert.rule = jordan ? "jordan" : "small-degree";

  // Roles still missing, each filled by the first prime that shows it.
  std::vector<EvidenceRole> need{EvidenceRole::TransitivityDCycle, EvidenceRole::OddPermutation};
  if (jordan) need.push_back(EvidenceRole::JordanQCycle);
  else if (D >= 4) {
    need.push_back(EvidenceRole::DoublyTransitive);
    need.push_back(EvidenceRole::Transposition);
  }
  auto shows = [&](EvidenceRole r, const std::vector<int>& t) {
    switch (r) {
      case EvidenceRole::TransitivityDCycle: return t.size() == 1;
      case EvidenceRole::OddPermutation: return is_odd_permutation(t);
      case EvidenceRole::JordanQCycle: return jordan_part(t, D) != 0;
      case EvidenceRole::DoublyTransitive: return t.size() == 2 && t[0] == 1 && t[1] == D - 1;
      case EvidenceRole::Transposition: return powers_to_transposition(t);
      default: return false;
    }
  };

  for (std::uint32_t prime : first_primes(opts.prime_budget)) {
    if (need.empty()) break;
    ++cert.primes_scanned;
    const auto type = cycle_type(q, prime);
    if (!type) continue;
    for (auto it = need.begin(); it != need.end();) {
      if (shows(*it, *type)) {
        cert.evidence.push_back({prime, *type, *it});
        it = need.erase(it);
      } else {
        ++it;
      }
    }
  }
  // A nonsquare discriminant stands in for a missing odd cycle type.
  auto odd = std::find(need.begin(), need.end(), EvidenceRole::OddPermutation);
  if (odd != need.end() && D <= opts.discriminant_max_degree && discriminant_nonsquare(q)) {
    cert.evidence.push_back({0, {}, EvidenceRole::NonsquareDiscriminant});
    need.erase(odd);
  }
  if (need.empty()) cert.verdict = GaloisCertificate::Verdict::CertifiedSymmetric;
  return cert;
}

bool InstanceCertificate::pass() const {
  return !clauses.empty() && std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.pass; });
}

std::string InstanceCertificate::first_failure() const {
  for (const auto& c : clauses)
    if (!c.pass) return c.name;
  return {};
}

namespace {

// Exactly one root of squarefree p in the closed interval.
bool single_root_in(const UniPoly& p, const Interval& iv) {
  if (iv.is_point()) return p.sign_at(iv.low) == 0;
  const SturmSequence s(p);
  return s.count_roots(iv.low, iv.high) + (p.sign_at(iv.low) == 0 ? 1 : 0) == 1;
}

}  // namespace

InstanceCertificate certify_instance(const CoeffVector& c, const std::vector<Eliminant>& eliminants,
                                     const NEReport& ne, const CertifyOptions& opts) {
  const int n = c.n();
  InstanceCertificate cert;
  cert.n = n;
  auto add = [&](std::string name, bool pass, std::string detail) {
    cert.clauses.push_back({std::move(name), pass, std::move(detail)});
  };

  const bool unique = ne.complete && ne.equilibria.size() == 1;
  add("unique-ne", unique,
      std::to_string(ne.equilibria.size()) + " equilibria, " + std::to_string(ne.patterns_decided) + "/" +
          std::to_string(ne.patterns_total) + " patterns decided" + (ne.complete ? "" : ", enumeration incomplete"));
  const bool mixed = unique && ne.fully_mixed_count() == 1;
  add("fully-mixed", mixed, mixed ? "interior equilibrium" : "no unique fully mixed equilibrium");

  const Integer want = derangement(n);
  bool have_all = static_cast<int>(eliminants.size()) == n;
  for (int i = 0; i < n && have_all; ++i) have_all = eliminants[static_cast<std::size_t>(i)].player == i;
  bool degree_ok = have_all && n >= 3;
  std::string degree_detail = have_all ? "expected " + want.get_str() : "eliminants missing";
  if (have_all && n < 3) degree_detail += ", n < 3 is outside the theorem's range";
  for (int i = 0; i < n && have_all; ++i) {
    const int d = eliminants[static_cast<std::size_t>(i)].poly.degree();
    degree_detail += (i == 0 ? ", got " : " ") + std::to_string(d);
    if (Integer(d) != want) degree_ok = false;
  }
  add("degree", degree_ok, degree_detail);

  bool dense = have_all, irreducible = degree_ok, galois = degree_ok, roots = mixed && have_all;
  std::string dense_detail, irr_detail = degree_ok ? "" : "skipped: degree clause failed",
                            gal_detail = irr_detail, root_detail;
  for (int i = 0; i < n && have_all; ++i) {
    PlayerCertificate pc;
    pc.player = i;
    pc.poly = eliminants[static_cast<std::size_t>(i)].poly;
    pc.density = check_dense(pc.poly);
    if (!pc.density.dense()) {
      dense = false;
      dense_detail += "x" + std::to_string(i + 1) + " has " + std::to_string(pc.density.zero_indices.size()) + " zero coefficients; ";
    }
    if (degree_ok) {
      pc.irreducible = certify_irreducible(pc.poly, opts.prime_budget);
      if (pc.irreducible.verdict != IrreducibilityResult::Verdict::Irreducible) {
        irreducible = false;
        irr_detail += "x" + std::to_string(i + 1) + " " + verdict_name(pc.irreducible.verdict) + "; ";
      }
      GaloisOptions go;
      go.prime_budget = opts.prime_budget;
      pc.galois = certify_full_symmetric(pc.poly, go);
      if (pc.galois->verdict != GaloisCertificate::Verdict::CertifiedSymmetric) {
        galois = false;
        gal_detail += "x" + std::to_string(i + 1) + " inconclusive; ";
      }
    }
    if (roots && !single_root_in(pc.poly, ne.equilibria.front().coords[static_cast<std::size_t>(i)])) {
      roots = false;
      root_detail += "x" + std::to_string(i + 1) + " interval does not isolate a root; ";
    }
    cert.players.push_back(std::move(pc));
  }
  if (!have_all) dense_detail = root_detail = "eliminants missing";
  if (have_all && !mixed) root_detail = "skipped: no unique fully mixed equilibrium";
  add("density", dense, dense ? "all coefficients nonzero" : dense_detail);
  add("irreducible", irreducible, irreducible ? "every eliminant has a prime with one irreducible factor" : irr_detail);
  add("galois", galois, galois ? "symmetric group certified for every eliminant" : gal_detail);
  add("root-of-eliminant", roots, roots ? "each coordinate interval isolates one eliminant root" : root_detail);
  cert.irradical = galois && want >= 5;
  return cert;
}

nlohmann::json density_to_json(const DensityReport& d) {
  return {{"dense", d.dense()}, {"zero_indices", d.zero_indices}};
}

nlohmann::json irreducibility_to_json(const IrreducibilityResult& r) {
  nlohmann::json j{{"verdict", verdict_name(r.verdict)}, {"primes_scanned", r.primes_scanned}};
  if (r.verdict == IrreducibilityResult::Verdict::Irreducible) j["witness_prime"] = r.witness_prime;
  if (r.rational_root) j["rational_root"] = rational_to_json(*r.rational_root);
  if (r.verdict != IrreducibilityResult::Verdict::Irreducible) j["possible_factor_degrees"] = r.possible_factor_degrees;
  return j;
}

nlohmann::json galois_to_json(const GaloisCertificate& g) {
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& e : g.evidence)
    ev.push_back({{"prime", e.prime}, {"cycle_type", e.cycle_type}, {"role", role_name(e.role)}});
  return {{"poly", poly_to_json(g.poly)},
          {"degree", g.degree},
          {"rule", g.rule},
          {"evidence", ev},
          {"primes_scanned", g.primes_scanned},
          {"verdict", g.verdict == GaloisCertificate::Verdict::CertifiedSymmetric ? "CertifiedSymmetric" : "Inconclusive"}};
}

nlohmann::json certificate_to_json(const InstanceCertificate& c) {
  nlohmann::json clauses = nlohmann::json::object();
  for (const auto& cl : c.clauses) clauses[cl.name] = {{"pass", cl.pass}, {"detail", cl.detail}};
  nlohmann::json players = nlohmann::json::array();
  for (const auto& p : c.players) {
    nlohmann::json j{{"player", p.player + 1},
                     {"degree", p.poly.degree()},
                     {"poly", poly_to_json(p.poly)},
                     {"density", density_to_json(p.density)}};
    if (p.galois) {
      j["irreducibility"] = irreducibility_to_json(p.irreducible);
      j["galois"] = galois_to_json(*p.galois);
    }
    players.push_back(std::move(j));
  }
  return {{"n", c.n}, {"pass", c.pass()}, {"clauses", clauses}, {"players", players}, {"irradical", c.irradical}};
}

}  // namespace dnash
