#include <algorithm>

#include "dnash/poly_json.hpp"
#include "dnash/solver.hpp"

namespace dnash {

std::string pattern_name(const SupportPattern& p) {
  std::string s;
  for (Strategy x : p) s.push_back(static_cast<char>(x));
  return s;
}

SupportPattern pattern_from_index(int n, std::size_t k) {
  SupportPattern p(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i, k /= 3) {
    const std::size_t d = k % 3;
    p[static_cast<std::size_t>(i)] = d == 0 ? Strategy::Pure0 : d == 1 ? Strategy::Pure1 : Strategy::Mixed;
  }
  return p;
}

std::size_t NEReport::fully_mixed_count() const {
  return static_cast<std::size_t>(std::count_if(equilibria.begin(), equilibria.end(), [](const Equilibrium& e) {
    return std::all_of(e.pattern.begin(), e.pattern.end(), [](Strategy s) { return s == Strategy::Mixed; });
  }));
}

namespace {

// Sign of h at box `b`, trying the stored box before the exact procedure.
int sign_at(const MultiAffinePoly& h, const SystemSolution& sol, std::size_t b) {
  std::vector<Interval> full(static_cast<std::size_t>(h.n()), Interval::point(Rational(0)));
  for (std::size_t j = 0; j < sol.unknowns.size(); ++j)
    full[static_cast<std::size_t>(sol.unknowns[j])] = sol.boxes[b].intervals[j];
  const Interval v = h.range(full);
  if (sgn(v.low) > 0) return 1;
  if (sgn(v.high) < 0) return -1;
  return exact_sign_at(h, sol, b);
}

bool pure_condition_holds(Strategy s, int sign) {
  return s == Strategy::Pure1 ? sign >= 0 : sign <= 0;
}

}  // namespace

NEReport enumerate_ne(const CoeffVector& c, const Rational& tol, const SystemSolution* full,
                      const SolveOptions& base) {
  SolveOptions opts = base;
  opts.tol = tol;
  const int n = c.n();
  NEReport rep;
  rep.n = n;
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  rep.patterns_total = total;

  for (std::size_t k = 0; k < total; ++k) {
    const SupportPattern pat = pattern_from_index(n, k);
    PlayerSet mixed = 0, fixed = 0;
    std::vector<Rational> values(static_cast<std::size_t>(n), Rational(0));
    for (int i = 0; i < n; ++i) {
      const Strategy s = pat[static_cast<std::size_t>(i)];
      if (s == Strategy::Mixed) {
        mixed |= PlayerSet{1} << i;
      } else {
        fixed |= PlayerSet{1} << i;
        values[static_cast<std::size_t>(i)] = s == Strategy::Pure1 ? 1 : 0;
      }
    }

    if (mixed == 0) {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        ok = pure_condition_holds(pat[static_cast<std::size_t>(i)], sgn(c.poly(i).evaluate(values)));
      if (ok) {
        Equilibrium e{pat, {}};
        for (const auto& v : values) e.coords.push_back(Interval::point(v));
        rep.equilibria.push_back(std::move(e));
      }
      ++rep.patterns_decided;
      continue;
    }

    std::vector<MultiAffinePoly> eqs;
    for (int i = 0; i < n; ++i)
      if (contains(mixed, i)) eqs.push_back(c.poly(i).substitute(fixed, values));
    SystemSolution own;
    const SystemSolution* sol = nullptr;
    if (fixed == 0 && full) {
      sol = full;
    } else {
      own = solve_system(eqs, mixed, opts);
      sol = &own;
    }
    if (sol->status == SystemStatus::Degenerate) {
      rep.degenerate_patterns.push_back(pattern_name(pat));
      rep.complete = false;
      continue;
    }
    if (sol->status == SystemStatus::NoTorusSolution) {
      ++rep.patterns_decided;
      continue;
    }
    if (sol->undecided) {
      rep.undecided_patterns.push_back(pattern_name(pat));
      rep.complete = false;
    } else {
      ++rep.patterns_decided;
    }

    for (std::size_t b = 0; b < sol->boxes.size(); ++b) {
      bool ok = true;
      // Mixed coordinates strictly inside (0, 1).
      for (std::size_t j = 0; j < sol->unknowns.size() && ok; ++j) {
        const int v = sol->unknowns[j];
        MultiAffinePoly x(n), x1(n);
        x.set(PlayerSet{1} << v, Rational(1));
        x1.set(PlayerSet{1} << v, Rational(1));
        x1.set(0, Rational(-1));
        ok = sign_at(x, *sol, b) > 0 && sign_at(x1, *sol, b) < 0;
      }
      // Pure players must weakly prefer their action.
      for (int i = 0; i < n && ok; ++i) {
        if (contains(mixed, i)) continue;
        const MultiAffinePoly h = c.poly(i).substitute(fixed, values);
        ok = pure_condition_holds(pat[static_cast<std::size_t>(i)], sign_at(h, *sol, b));
      }
      if (!ok) continue;
      Equilibrium e{pat, {}};
      std::size_t j = 0;
      for (int i = 0; i < n; ++i)
        e.coords.push_back(contains(mixed, i) ? sol->boxes[b].intervals[j++]
                                              : Interval::point(values[static_cast<std::size_t>(i)]));
      rep.equilibria.push_back(std::move(e));
    }
  }
  return rep;
}

NEReport enumerate_ne(const PayoffTensor& g, const Rational& tol) {
  return enumerate_ne(advantage_from_payoffs(g), tol);
}

namespace {

nlohmann::json interval_json(const Interval& iv) {
  if (iv.is_point()) return rational_to_json(iv.low);
  return nlohmann::json::array({rational_to_json(iv.low), rational_to_json(iv.high)});
}

}  // namespace

nlohmann::json ne_report_to_json(const NEReport& r) {
  nlohmann::json eq = nlohmann::json::array();
  for (const auto& e : r.equilibria) {
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& iv : e.coords) coords.push_back(interval_json(iv));
    eq.push_back({{"pattern", pattern_name(e.pattern)}, {"coordinates", coords}});
  }
  return {{"n", r.n},
          {"equilibria", eq},
          {"equilibrium_count", r.equilibria.size()},
          {"fully_mixed_count", r.fully_mixed_count()},
          {"complete", r.complete},
          {"patterns_total", r.patterns_total},
          {"patterns_decided", r.patterns_decided},
          {"degenerate_patterns", r.degenerate_patterns},
          {"undecided_patterns", r.undecided_patterns}};
}

nlohmann::json eliminant_to_json(const Eliminant& e) {
  return {{"player", e.player + 1},
          {"degree", e.poly.degree()},
          {"poly", poly_to_json(e.poly)},
          {"provenance", e.provenance}};
}

nlohmann::json box_to_json(const RootBox& b) {
  nlohmann::json iv = nlohmann::json::array();
  for (const auto& x : b.intervals) iv.push_back(nlohmann::json::array({rational_to_json(x.low), rational_to_json(x.high)}));
  return {{"status", b.status == RootBox::Status::VerifiedSolution ? "verified-solution" : "spurious"},
          {"intervals", iv}};
}

}  // namespace dnash
