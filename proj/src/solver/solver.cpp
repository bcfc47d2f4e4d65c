#include "dnash/solver.hpp"

#include <algorithm>

#include "dnash/elimination.hpp"

namespace dnash {

namespace {

Interval add(const Interval& a, const Interval& b) { return {a.low + b.low, a.high + b.high}; }

Interval mul(const Interval& a, const Interval& b) {
  const Rational p[4] = {a.low * b.low, a.low * b.high, a.high * b.low, a.high * b.high};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval scale(const Rational& q, const Interval& a) {
  return sgn(q) >= 0 ? Interval(q * a.low, q * a.high) : Interval(q * a.high, q * a.low);
}

// b must exclude zero.
Interval divide(const Interval& a, const Interval& b) {
  const Rational p[4] = {a.low / b.low, a.low / b.high, a.high / b.low, a.high / b.high};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

bool excludes_zero(const Interval& a) { return sgn(a.low) > 0 || sgn(a.high) < 0; }

Interval horner(const std::vector<Integer>& c, const Interval& x) {
  if (c.empty()) return Interval::point(Rational(0));
  Interval acc = Interval::point(Rational(c.back()));
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = add(mul(acc, x), Interval::point(Rational(c[k])));
  return acc;
}

MultiAffinePoly derivative(const MultiAffinePoly& f, int j) {
  MultiAffinePoly d(f.n());
  const PlayerSet bit = PlayerSet{1} << j;
  for (PlayerSet s = 0; s < f.coefficients().size(); ++s)
    if (!(s & bit)) d.set(s, f.coeff(s | bit));
  return d;
}

// Positive multiple with integer coefficients, as a sparse polynomial.
ZPoly scaled_zpoly(const MultiAffinePoly& f, Integer* scale_out) {
  Integer den(1);
  for (const auto& q : f.coefficients())
    if (sgn(q) != 0) den = lcm(den, Integer(q.get_den()));
  std::vector<ZPoly::Term> t;
  for (PlayerSet s = 0; s < f.coefficients().size(); ++s) {
    const Rational& q = f.coeff(s);
    if (sgn(q) == 0) continue;
    Monomial m = 0;
    for (int j = 0; j < f.n(); ++j)
      if (contains(s, j)) m += unit_monomial(j);
    t.emplace_back(m, Integer(q * den));
  }
  if (scale_out) *scale_out = den;
  return ZPoly(IntegerRing{}, std::move(t));
}

UniPoly positive_primitive(const UniPoly& p) { return p.primitive(); }

// A power of two above every root's modulus, so bisection endpoints stay dyadic.
Rational dyadic_bound(const UniPoly& p) {
  const Rational b = cauchy_bound(p);
  Rational r(1);
  while (r < b) r *= 2;
  return r;
}

// Exact inverse of a small rational matrix; false when singular.
bool invert(std::vector<std::vector<Rational>> a, std::vector<std::vector<Rational>>& inv) {
  const std::size_t k = a.size();
  inv.assign(k, std::vector<Rational>(k, Rational(0)));
  for (std::size_t i = 0; i < k; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && sgn(a[piv][col]) == 0) ++piv;
    if (piv == k) return false;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational f = 1 / a[col][col];
    for (std::size_t j = 0; j < k; ++j) {
      a[col][j] *= f;
      inv[col][j] *= f;
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const Rational g = a[r][col];
      for (std::size_t j = 0; j < k; ++j) {
        a[r][j] -= g * a[col][j];
        inv[r][j] -= g * inv[col][j];
      }
    }
  }
  return true;
}

// Krawczyk test: true proves a unique zero of eqs inside the box (unknown coordinates).
bool krawczyk(const std::vector<MultiAffinePoly>& eqs, const std::vector<int>& unknowns,
              const std::vector<Interval>& box) {
  const std::size_t k = unknowns.size();
  const int n = eqs.front().n();
  std::vector<Rational> c(static_cast<std::size_t>(n), Rational(0));
  std::vector<Interval> full(static_cast<std::size_t>(n), Interval::point(Rational(0)));
  for (std::size_t j = 0; j < k; ++j) {
    c[static_cast<std::size_t>(unknowns[j])] = box[j].midpoint();
    full[static_cast<std::size_t>(unknowns[j])] = box[j];
  }
  std::vector<std::vector<Rational>> jc(k, std::vector<Rational>(k));
  std::vector<std::vector<Interval>> jx(k, std::vector<Interval>(k));
  std::vector<Rational> fc(k);
  for (std::size_t m = 0; m < k; ++m) {
    fc[m] = eqs[m].evaluate(c);
    for (std::size_t j = 0; j < k; ++j) {
      const MultiAffinePoly d = derivative(eqs[m], unknowns[j]);
      jc[m][j] = d.evaluate(c);
      jx[m][j] = d.range(full);
    }
  }
  std::vector<std::vector<Rational>> y;
  if (!invert(jc, y)) return false;
  for (std::size_t i = 0; i < k; ++i) {
    Rational step(0);
    for (std::size_t m = 0; m < k; ++m) step += y[i][m] * fc[m];
    const Rational ci = c[static_cast<std::size_t>(unknowns[i])];
    Interval ki = Interval::point(ci - step);
    for (std::size_t j = 0; j < k; ++j) {
      Interval e = Interval::point(Rational(i == j ? 1 : 0));
      for (std::size_t m = 0; m < k; ++m) e = add(e, scale(-y[i][m], jx[m][j]));
      const Rational r = box[j].width() / 2;
      ki = add(ki, mul(e, Interval(-r, r)));
    }
    if (!(box[i].low < ki.low && ki.high < box[i].high)) return false;
  }
  return true;
}

struct Coordinate {
  UniPoly poly;
  IntPoly ip;
  SturmSequence sturm;
  explicit Coordinate(const UniPoly& p) : poly(p), ip(p.to_int_primitive()), sturm(p) {}

  // An interval of positive width around an exact root that still isolates it.
  Interval widen(const Rational& v, Rational eps) const {
    for (;;) {
      if (ip.sign_at(v - eps) != 0 && ip.sign_at(v + eps) != 0 && sturm.count_roots(v - eps, v + eps) == 1)
        return {v - eps, v + eps};
      eps /= 2;
    }
  }
};

enum class Outcome { Verified, Spurious, Undecided };

std::vector<Interval> embed(int n, const std::vector<int>& unknowns, const std::vector<Interval>& box) {
  std::vector<Interval> full(static_cast<std::size_t>(n), Interval::point(Rational(0)));
  for (std::size_t j = 0; j < unknowns.size(); ++j) full[static_cast<std::size_t>(unknowns[j])] = box[j];
  return full;
}

Rational max_width(const std::vector<Interval>& box) {
  Rational w(0);
  for (const auto& iv : box) w = std::max(w, iv.width());
  return w;
}

Outcome resolve_candidate(const std::vector<MultiAffinePoly>& eqs, const std::vector<int>& unknowns,
                          const std::vector<Coordinate>& coords, std::vector<Interval>& box,
                          const SolveOptions& opts) {
  const int n = eqs.front().n();
  for (;;) {
    const auto full = embed(n, unknowns, box);
    for (const auto& e : eqs)
      if (excludes_zero(e.range(full))) return Outcome::Spurious;
    const bool all_points = std::all_of(box.begin(), box.end(), [](const Interval& iv) { return iv.is_point(); });
    bool verified = false;
    if (all_points) {
      verified = true;  // every range above was exactly {0}
    } else {
      std::vector<Interval> wide = box;
      const Rational w = std::max(max_width(box), opts.min_tol);
      for (std::size_t j = 0; j < box.size(); ++j)
        if (box[j].is_point()) wide[j] = coords[j].widen(box[j].low, w);
      verified = krawczyk(eqs, unknowns, wide);
    }
    if (verified) {
      for (std::size_t j = 0; j < box.size(); ++j)
        if (box[j].width() > opts.tol) box[j] = refine_root(coords[j].ip, box[j], opts.tol);
      return Outcome::Verified;
    }
    const Rational w = max_width(box);
    if (w <= opts.min_tol) return Outcome::Undecided;
    for (std::size_t j = 0; j < box.size(); ++j)
      if (!box[j].is_point()) box[j] = refine_root(coords[j].ip, box[j], box[j].width() / 2);
  }
}

void pair_roots(SystemSolution& sol, const std::vector<MultiAffinePoly>& eqs, const SolveOptions& opts) {
  const std::size_t k = sol.unknowns.size();
  const int n = eqs.front().n();
  std::vector<Coordinate> coords;
  std::vector<std::vector<Interval>> roots(k);
  for (std::size_t j = 0; j < k; ++j) {
    coords.emplace_back(sol.eliminants[j].poly);
    const Rational b = dyadic_bound(sol.eliminants[j].poly);
    for (const auto& iv : sturm_isolate(sol.eliminants[j].poly, Interval(-b, b)))
      roots[j].push_back(iv.width() > pow2(-16) ? refine_root(coords[j].ip, iv, pow2(-16)) : iv);
  }
  // Depth-first over coordinate choices, pruning with equations whose unknowns are all chosen.
  std::vector<PlayerSet> need(eqs.size());
  for (std::size_t m = 0; m < eqs.size(); ++m) need[m] = eqs[m].variables();
  std::vector<Interval> box(k);
  std::vector<std::size_t> choice(k);
  PlayerSet chosen = 0;
  auto dfs = [&](auto&& self, std::size_t j) -> void {
    if (j == k) {
      std::vector<Interval> cand = box;
      switch (resolve_candidate(eqs, sol.unknowns, coords, cand, opts)) {
        case Outcome::Verified:
          sol.boxes.push_back({cand, RootBox::Status::VerifiedSolution});
          break;
        case Outcome::Undecided:
          sol.undecided = true;
          break;
        case Outcome::Spurious:
          break;
      }
      return;
    }
    const PlayerSet before = chosen;
    chosen |= PlayerSet{1} << sol.unknowns[j];
    for (std::size_t r = 0; r < roots[j].size(); ++r) {
      box[j] = roots[j][r];
      bool pruned = false;
      const auto full = embed(n, std::vector<int>(sol.unknowns.begin(), sol.unknowns.begin() + static_cast<long>(j) + 1),
                              std::vector<Interval>(box.begin(), box.begin() + static_cast<long>(j) + 1));
      for (std::size_t m = 0; m < eqs.size() && !pruned; ++m)
        if ((need[m] & ~chosen) == 0 && (need[m] >> sol.unknowns[j] & 1u) && excludes_zero(eqs[m].range(full)))
          pruned = true;
      if (!pruned) self(self, j + 1);
    }
    chosen = before;
  };
  dfs(dfs, 0);
}

bool has_full_support(const std::vector<MultiAffinePoly>& eqs, const std::vector<int>& unknowns) {
  PlayerSet all = 0;
  for (int u : unknowns) all |= PlayerSet{1} << u;
  for (std::size_t m = 0; m < eqs.size(); ++m) {
    const PlayerSet own = all & ~(PlayerSet{1} << unknowns[m]);
    for (PlayerSet s = 0; s < eqs[m].coefficients().size(); ++s) {
      const bool legal = (s & ~own) == 0;
      if (legal != (sgn(eqs[m].coeff(s)) != 0)) return false;
    }
  }
  return true;
}

// For full supports every initial system is indexed by a sign vector; none may have a
// zero on the torus, which rules out solutions at infinity.
bool no_solutions_at_infinity(const std::vector<MultiAffinePoly>& eqs, const std::vector<int>& unknowns,
                              std::vector<std::string>& trace) {
  const std::size_t k = unknowns.size();
  std::size_t total = 1;
  for (std::size_t j = 0; j < k; ++j) total *= 3;
  for (std::size_t code = 1; code < total; ++code) {
    PlayerSet zero = 0, negative = 0;
    std::size_t rest = code;
    for (std::size_t j = 0; j < k; ++j, rest /= 3) {
      const PlayerSet bit = PlayerSet{1} << unknowns[j];
      if (rest % 3 == 0) zero |= bit;
      if (rest % 3 == 2) negative |= bit;
    }
    if (zero == 0) continue;  // every initial form is a single nonzero term
    std::vector<ZPoly> initial;
    for (std::size_t m = 0; m < k; ++m) {
      const PlayerSet own = PlayerSet{1} << unknowns[m];
      const PlayerSet neg = negative & ~own;
      const PlayerSet free = zero & ~own;
      std::vector<ZPoly::Term> terms;
      Integer den(1);
      for (PlayerSet t = free;; t = (t - 1) & free) {
        den = lcm(den, Integer(eqs[m].coeff(neg | t).get_den()));
        if (t == 0) break;
      }
      for (PlayerSet t = free;; t = (t - 1) & free) {
        const Rational& q = eqs[m].coeff(neg | t);
        if (sgn(q) != 0) {
          Monomial mono = 0;
          for (int j = 0; j < kMaxPlayers; ++j)
            if (contains(t, j)) mono += unit_monomial(j);
          terms.emplace_back(mono, Integer(q * den));
        }
        if (t == 0) break;
      }
      initial.emplace_back(IntegerRing{}, std::move(terms));
    }
    if (!proves_no_torus_solution(initial, zero, 8)) {
      trace.push_back("initial system for sign vector " + std::to_string(code) + " not excluded");
      return false;
    }
  }
  return true;
}

void route_path(SystemSolution& sol, const std::vector<ZPoly>& zs, PlayerSet mask, long bound,
                const SolveOptions& opts) {
  sol.method = "iterated resultants";
  for (int u : sol.unknowns) {
    EliminationResult r = eliminate_system(zs, u, mask, static_cast<int>(bound), opts.max_routes);
    for (auto& t : r.trace) sol.trace.push_back("x" + std::to_string(u + 1) + ": " + t);
    if (r.status == EliminationStatus::NoSolution) {
      sol.status = SystemStatus::NoTorusSolution;
      sol.eliminants.clear();
      return;
    }
    if (r.status == EliminationStatus::Degenerate) {
      sol.status = SystemStatus::Degenerate;
      sol.eliminants.clear();
      return;
    }
    Eliminant e;
    e.player = u;
    e.poly = positive_primitive(r.poly);
    e.provenance = std::move(r.trace);
    sol.eliminants.push_back(std::move(e));
  }
  sol.status = SystemStatus::Ok;
}

bool modular_path(SystemSolution& sol, const std::vector<MultiAffinePoly>& eqs, const std::vector<ZPoly>& zs,
                  long bound, const SolveOptions& opts) {
  const std::size_t k = sol.unknowns.size();
  if (!no_solutions_at_infinity(eqs, sol.unknowns, sol.trace)) return false;
  std::vector<ZPoly> renamed;
  for (ZPoly z : zs) {
    for (std::size_t j = 0; j < k; ++j)
      if (sol.unknowns[j] != static_cast<int>(j)) z = z.rename(sol.unknowns[j], static_cast<int>(j));
    renamed.push_back(std::move(z));
  }
  auto cs = certified_solution_set(renamed, static_cast<unsigned>(k), static_cast<std::size_t>(bound), opts.max_primes);
  if (!cs) {
    sol.trace.push_back("multimodular parametrisation not certified within the prime budget");
    return false;
  }
  sol.method = "multimodular parametrisation";
  sol.trace.push_back("no initial system has a torus zero; root count " + std::to_string(bound) + " attained");
  sol.trace.push_back("parametrisations verified after " + std::to_string(cs->primes) + " primes");
  for (std::size_t j = 0; j < k; ++j) {
    Eliminant e;
    e.player = sol.unknowns[j];
    e.poly = positive_primitive(cs->by_variable[j].minpoly.to_unipoly());
    e.provenance = {"minimal polynomial of x" + std::to_string(e.player + 1) + " in the quotient algebra, " +
                    std::to_string(cs->primes) + " primes, verified parametrisation"};
    sol.eliminants.push_back(std::move(e));
  }
  sol.equations = std::move(renamed);
  sol.parametrisation = std::move(cs->by_variable.front());
  sol.status = SystemStatus::Ok;
  return true;
}

struct ParamBoxes {
  const Parametrisation& par;
  std::vector<Integer> dg;
  IntPoly g;

  explicit ParamBoxes(const Parametrisation& p) : par(p), g(p.minpoly) {
    const auto& c = g.coefficients();
    for (std::size_t k = 1; k < c.size(); ++k) dg.push_back(c[k] * static_cast<long>(k));
  }

  // Coordinate intervals for the root of G in theta; std::nullopt if G' is not yet
  // bounded away from zero.
  std::optional<std::vector<Interval>> coords(const Interval& theta) const {
    const Interval d = horner(dg, theta);
    if (!excludes_zero(d)) return std::nullopt;
    std::vector<Interval> out;
    for (std::size_t w = 0; w < par.numer.size(); ++w) {
      if (static_cast<int>(w) == par.sep) {
        out.push_back(theta);
        continue;
      }
      const Interval num = horner(par.numer[w].coefficients(), theta);
      out.push_back(divide(num, scale(Rational(par.denom[w]), d)));
    }
    return out;
  }
};

// Smallest interval with endpoints on the grid 2^-bits containing iv.
Interval round_outward(const Interval& iv, unsigned long bits) {
  Integer scale(1);
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
  const Rational lo = iv.low * scale, hi = iv.high * scale;
  Integer f, c;
  mpz_fdiv_q(f.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  mpz_cdiv_q(c.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  Rational a(f, scale), b(c, scale);
  a.canonicalize();
  b.canonicalize();
  return Interval(a, b);
}

unsigned long grid_bits(const Rational& tol) {
  unsigned long bits = 0;
  Rational w(1);
  while (w > tol) w /= 2, ++bits;
  return bits + 4;
}

void param_boxes(SystemSolution& sol, const SolveOptions& opts, std::vector<Interval>& thetas) {
  const Parametrisation& par = *sol.parametrisation;
  ParamBoxes pb(par);
  const UniPoly g = par.minpoly.to_unipoly();
  const Rational b = dyadic_bound(g);
  thetas = sturm_isolate(g, Interval(-b, b));
  const std::size_t k = sol.unknowns.size();
  std::vector<std::vector<Interval>> boxes(thetas.size());
  Rational width = opts.tol;
  for (;;) {
    bool done = true;
    for (std::size_t r = 0; r < thetas.size(); ++r) {
      std::optional<std::vector<Interval>> c;
      for (;;) {
        c = pb.coords(thetas[r]);
        if (c && max_width(*c) <= width) break;
        if (thetas[r].is_point()) break;
        thetas[r] = refine_root(pb.g, thetas[r], thetas[r].width() / 4);
      }
      if (!c) throw Error("solver: parametrisation denominator vanishes at a root");
      const unsigned long bits = grid_bits(width);
      for (auto& iv : *c) iv = round_outward(iv, bits);
      boxes[r] = std::move(*c);
    }
    // Real roots of each eliminant correspond to real parameter roots, so pairwise
    // disjoint sides isolate them.
    for (std::size_t j = 0; j < k && done; ++j)
      for (std::size_t r = 0; r < boxes.size() && done; ++r)
        for (std::size_t s = r + 1; s < boxes.size() && done; ++s)
          if (boxes[r][j].overlaps(boxes[s][j])) done = false;
    if (done) break;
    width /= 2;
  }
  for (auto& bx : boxes) sol.boxes.push_back({std::move(bx), RootBox::Status::VerifiedSolution});
}

}  // namespace

SystemSolution solve_system(const std::vector<MultiAffinePoly>& eqs, PlayerSet unknowns, const SolveOptions& opts) {
  SystemSolution sol;
  for (int j = 0; j < kMaxPlayers; ++j)
    if (contains(unknowns, j)) sol.unknowns.push_back(j);
  const std::size_t k = sol.unknowns.size();
  if (eqs.size() != k || k == 0) throw Error("solve_system: need one equation per unknown");
  for (const auto& e : eqs)
    if ((e.variables() & ~unknowns) != 0) throw Error("solve_system: equation uses a fixed variable");

  std::vector<ZPoly> zs;
  for (std::size_t m = 0; m < k; ++m) {
    if (eqs[m].is_zero()) {
      sol.status = SystemStatus::Degenerate;
      sol.trace.push_back("equation " + std::to_string(m + 1) + " vanishes identically");
      return sol;
    }
    zs.push_back(eqs[m].to_zpoly());
  }
  const long bound = bezout_bound(zs, unknowns);
  sol.trace.push_back("multihomogeneous root bound " + std::to_string(bound));

  std::vector<Interval> thetas;
  bool done = false;
  if (k >= 5 && has_full_support(eqs, sol.unknowns)) {
    // Iterated resultants are out of reach here; without a certificate the system stays unresolved.
    if (!modular_path(sol, eqs, zs, bound, opts)) {
      sol.status = SystemStatus::Degenerate;
      sol.eliminants.clear();
      return sol;
    }
    param_boxes(sol, opts, thetas);
    sol.theta = std::move(thetas);
    return sol;
  }
  if (!done) {
    route_path(sol, zs, unknowns, bound, opts);
    sol.equations = zs;
    // Extraneous factors that survived every route: fall back to the quotient algebra.
    const bool excess = sol.status == SystemStatus::Ok &&
                        std::any_of(sol.eliminants.begin(), sol.eliminants.end(),
                                    [&](const Eliminant& e) { return e.poly.degree() > bound; });
    if (excess && k >= 3 && has_full_support(eqs, sol.unknowns)) {
      SystemSolution alt;
      alt.unknowns = sol.unknowns;
      alt.trace = sol.trace;
      if (modular_path(alt, eqs, zs, bound, opts)) {
        sol = std::move(alt);
        param_boxes(sol, opts, thetas);
        done = true;
      }
    }
    if (!done && sol.status == SystemStatus::Ok) pair_roots(sol, eqs, opts);
  }
  if (sol.parametrisation) sol.theta = std::move(thetas);
  return sol;
}

namespace {

// Shrinks every side of a route-path box by refining its eliminant root.
void refine_box(const SystemSolution& sol, std::vector<Interval>& box, std::vector<IntPoly>& ips) {
  if (ips.empty())
    for (const auto& e : sol.eliminants) ips.push_back(e.poly.to_int_primitive());
  for (std::size_t j = 0; j < box.size(); ++j)
    if (!box[j].is_point()) box[j] = refine_root(ips[j], box[j], box[j].width() / 16);
}

}  // namespace

int exact_sign_at(const MultiAffinePoly& h, const SystemSolution& sol, std::size_t index) {
  const int n = h.n();
  if ((h.variables() & ~[&] {
        PlayerSet u = 0;
        for (int v : sol.unknowns) u |= PlayerSet{1} << v;
        return u;
      }()) != 0)
    throw Error("exact_sign_at: polynomial uses a variable outside the system");
  Integer scale_factor;
  const ZPoly hz = scaled_zpoly(h, &scale_factor);
  if (hz.is_constant()) return sgn(hz.constant_term());

  if (sol.parametrisation) {
    const Parametrisation& par = *sol.parametrisation;
    ParamBoxes pb(par);
    Interval theta = sol.theta.at(index);
    ZPoly renamed = hz;
    for (std::size_t j = 0; j < sol.unknowns.size(); ++j)
      if (sol.unknowns[j] != static_cast<int>(j)) renamed = renamed.rename(sol.unknowns[j], static_cast<int>(j));
    bool zero_tested = false;
    for (int round = 0;; ++round) {
      auto c = pb.coords(theta);
      if (c) {
        const Interval v = h.range(embed(n, sol.unknowns, *c));
        if (excludes_zero(v)) return sgn(v.low) > 0 ? 1 : -1;
      }
      if (!zero_tested && round >= 4) {
        zero_tested = true;
        const IntPoly num = homogenised_numerator(renamed, static_cast<unsigned>(sol.unknowns.size()), par);
        const UniPoly common = gcd(num.to_unipoly(), par.minpoly.to_unipoly());
        if (common.degree() >= 1) {
          // theta isolates one root of the minimal polynomial, and common divides it.
          if (theta.is_point() ? sgn(common.eval(theta.low)) == 0
                               : SturmSequence(common).count_roots(theta.low, theta.high) > 0)
            return 0;
        }
      }
      if (theta.is_point()) {
        // Exact rational parameter: evaluate exactly.
        auto pt = pb.coords(theta);
        if (!pt) throw Error("exact_sign_at: parametrisation denominator vanishes");
        std::vector<Rational> x(static_cast<std::size_t>(n), Rational(0));
        for (std::size_t j = 0; j < sol.unknowns.size(); ++j) x[static_cast<std::size_t>(sol.unknowns[j])] = (*pt)[j].low;
        return sgn(h.evaluate(x));
      }
      theta = refine_root(pb.g, theta, theta.width() / 1024);
    }
  }

  std::vector<Interval> box = sol.boxes.at(index).intervals;
  std::vector<IntPoly> ips;
  auto value = [&] { return h.range(embed(n, sol.unknowns, box)); };
  for (int round = 0; round < 6; ++round) {
    const Interval v = value();
    if (excludes_zero(v)) return sgn(v.low) > 0 ? 1 : -1;
    if (std::all_of(box.begin(), box.end(), [](const Interval& iv) { return iv.is_point(); })) return sgn(v.low);
    refine_box(sol, box, ips);
  }
  // Algebraic zero test: eliminate down to z = scale * h(x).
  const int z = n;
  if (z >= kMaxVars) throw Error("exact_sign_at: no variable left for the value");
  PlayerSet mask = 0;
  for (int v : sol.unknowns) mask |= PlayerSet{1} << v;
  std::vector<ZPoly> polys = sol.equations;
  polys.push_back(hz - ZPoly::variable(IntegerRing{}, z));
  const EliminationResult r = eliminate_system(polys, z, mask, -1, 2);
  UniPoly pz = r.status == EliminationStatus::Ok ? r.poly : UniPoly();
  Interval zero_window;
  bool zero_root = false;
  if (!pz.is_zero() && sgn(pz.coeff(0)) == 0) {
    zero_root = true;
    const SturmSequence st(pz);
    Rational a(1);
    while (!(sgn(pz.eval(a)) != 0 && sgn(pz.eval(-a)) != 0 && st.count_roots(-a, a) == 1)) a /= 2;
    zero_window = Interval(-a, a);
  }
  for (;;) {
    const Interval v = scale(Rational(scale_factor), value());
    if (excludes_zero(v)) return sgn(v.low) > 0 ? 1 : -1;
    if (zero_root && zero_window.low < v.low && v.high < zero_window.high) return 0;
    if (std::all_of(box.begin(), box.end(), [](const Interval& iv) { return iv.is_point(); })) return sgn(v.low);
    refine_box(sol, box, ips);
  }
}

std::vector<MultiAffinePoly> advantage_system(const CoeffVector& c) {
  std::vector<MultiAffinePoly> out;
  for (int i = 0; i < c.n(); ++i) out.push_back(c.poly(i));
  return out;
}

Eliminant eliminate(const CoeffVector& c, int player, const SolveOptions& opts) {
  const SystemSolution sol = solve_system(advantage_system(c), (PlayerSet{1} << c.n()) - 1, opts);
  if (sol.status == SystemStatus::Degenerate)
    throw Error("degenerate system: " + (sol.trace.empty() ? std::string("no finite certified solution set") : sol.trace.back()));
  if (sol.status == SystemStatus::NoTorusSolution) {
    Eliminant e;
    e.player = player;
    e.poly = UniPoly{1};
    e.provenance = sol.trace;
    return e;
  }
  return sol.eliminants.at(static_cast<std::size_t>(player));
}

std::vector<RootBox> solve_boxes(const CoeffVector& c, const Rational& tol) {
  SolveOptions opts;
  opts.tol = tol;
  const SystemSolution sol = solve_system(advantage_system(c), (PlayerSet{1} << c.n()) - 1, opts);
  if (sol.status == SystemStatus::Degenerate)
    throw Error("degenerate system: " + (sol.trace.empty() ? std::string("no finite certified solution set") : sol.trace.back()));
  return sol.boxes;
}

}  // namespace dnash
