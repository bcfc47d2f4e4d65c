#include "dnash/elimination.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace dnash {

std::string EliminationRoute::describe() const {
  std::ostringstream os;
  os << "order";
  for (int v : order) os << ' ' << v + 1;
  os << " pivot " << pivot_rank;
  return os.str();
}

namespace {

UniPoly to_unipoly(const ZPoly& p, int v) {
  std::vector<Rational> c(static_cast<std::size_t>(std::max(p.degree(v), 0)) + 1);
  for (const auto& [m, e] : p.terms()) c[static_cast<std::size_t>(exponent_of(m, v))] = e;
  return UniPoly(std::move(c));
}

}  // namespace

RouteResult run_route(const std::vector<ZPoly>& input, int keep, const EliminationRoute& route, unsigned strip) {
  RouteResult out;
  std::vector<ZPoly> polys;
  for (const auto& p : input) {
    if (p.is_zero()) continue;
    ZPoly q = primitive(p.strip_monomial(strip));
    if (q.is_constant()) {
      out.status = EliminationStatus::NoSolution;
      return out;
    }
    polys.push_back(std::move(q));
  }
  for (int v : route.order) {
    std::vector<std::size_t> with;
    for (std::size_t k = 0; k < polys.size(); ++k)
      if (polys[k].uses(v)) with.push_back(k);
    if (with.empty()) continue;
    std::stable_sort(with.begin(), with.end(), [&](std::size_t a, std::size_t b) {
      const int da = polys[a].degree(v), db = polys[b].degree(v);
      return da != db ? da < db : polys[a].size() < polys[b].size();
    });
    std::size_t tied = 1;
    while (tied < with.size() && polys[with[tied]].degree(v) == polys[with[0]].degree(v)) ++tied;
    const std::size_t pivot = with[std::min<std::size_t>(static_cast<std::size_t>(route.pivot_rank), tied - 1)];
    std::vector<ZPoly> next;
    for (std::size_t k = 0; k < polys.size(); ++k) {
      if (k == pivot) continue;
      if (!polys[k].uses(v)) {
        next.push_back(std::move(polys[k]));
        continue;
      }
      ZPoly r = resultant(polys[pivot], polys[k], v);
      if (r.is_zero()) return out;  // common factor: this route cannot separate the components
      r = primitive(r.strip_monomial(strip));
      if (r.is_constant()) {
        out.status = EliminationStatus::NoSolution;
        return out;
      }
      next.push_back(std::move(r));
    }
    polys = std::move(next);
  }
  if (keep < 0) return out;
  UniPoly g;
  for (const auto& p : polys) {
    if (p.variables() != (1u << keep)) continue;
    g = gcd(g, to_unipoly(p, keep));
  }
  if (g.is_zero()) return out;
  if (g.degree() == 0) {
    out.status = EliminationStatus::NoSolution;
    return out;
  }
  out.status = EliminationStatus::Ok;
  out.poly = std::move(g);
  return out;
}

std::vector<EliminationRoute> route_ladder(unsigned vars, int keep) {
  std::vector<int> others;
  for (int v = 0; v < kMaxVars; ++v)
    if (((vars >> v) & 1u) && v != keep) others.push_back(v);
  std::vector<EliminationRoute> routes;
  std::vector<int> perm = others;
  do {
    routes.push_back({perm, 0});
    routes.push_back({perm, 1});
  } while (std::next_permutation(perm.begin(), perm.end()));
  // Increasing order first, the rest in a fixed pseudo-random order.
  std::mt19937_64 rng(0x5eed);
  std::shuffle(routes.begin() + 1, routes.end(), rng);
  return routes;
}

EliminationResult eliminate_system(const std::vector<ZPoly>& polys, int keep, unsigned strip, int degree_target,
                                   int max_routes) {
  EliminationResult res;
  unsigned vars = 0;
  for (const auto& p : polys) vars |= p.variables();
  vars |= 1u << keep;
  const bool torus_keep = (strip >> keep) & 1u;
  UniPoly g;
  int succeeded = 0;
  for (const auto& route : route_ladder(vars, keep)) {
    if (succeeded >= max_routes) break;
    RouteResult r = run_route(polys, keep, route, strip);
    if (r.status == EliminationStatus::NoSolution) {
      res.status = EliminationStatus::NoSolution;
      res.trace.push_back(route.describe() + ": no solutions");
      return res;
    }
    if (r.status == EliminationStatus::Degenerate) {
      res.trace.push_back(route.describe() + ": degenerate");
      continue;
    }
    ++succeeded;
    res.trace.push_back(route.describe() + ": degree " + std::to_string(r.poly.degree()));
    g = gcd(g, r.poly);
    if (g.degree() == 0) {
      res.status = EliminationStatus::NoSolution;
      res.trace.push_back("routes share no root");
      return res;
    }
    UniPoly sf = squarefree_part(g);
    if (degree_target >= 0 && sf.degree() - (torus_keep && sgn(sf.coeff(0)) == 0 ? 1 : 0) <= degree_target) break;
  }
  if (g.is_zero()) {
    res.status = EliminationStatus::Degenerate;
    return res;
  }
  UniPoly sf = squarefree_part(g);
  const int zeros = torus_keep ? strip_root(sf, Rational(0)) : 0;
  if (zeros > 0) res.trace.push_back("removed factor t");
  if (sf.degree() == 0) {
    res.status = EliminationStatus::NoSolution;
    return res;
  }
  res.status = EliminationStatus::Ok;
  res.poly = sf.primitive();
  return res;
}

bool proves_no_torus_solution(const std::vector<ZPoly>& polys, unsigned strip, int max_routes) {
  unsigned vars = 0;
  for (const auto& p : polys) vars |= p.variables();
  if (vars == 0) {
    for (const auto& p : polys)
      if (!p.is_zero()) return true;
    return false;
  }
  int tried = 0;
  for (const auto& route : route_ladder(vars, -1)) {
    if (tried++ >= max_routes) break;
    if (run_route(polys, -1, route, strip).status == EliminationStatus::NoSolution) return true;
  }
  // Full elimination often dies on a shared factor in the last step. Keeping one
  // variable and intersecting route eliminants still works then.
  for (int v = 0; v < kMaxVars; ++v) {
    if (!((vars >> v) & 1u)) continue;
    if (eliminate_system(polys, v, strip, -1, 4).status == EliminationStatus::NoSolution) return true;
  }
  return false;
}

long bezout_bound(const std::vector<ZPoly>& polys, unsigned vars) {
  std::vector<int> idx;
  for (int v = 0; v < kMaxVars; ++v)
    if ((vars >> v) & 1u) idx.push_back(v);
  const std::size_t k = idx.size();
  if (polys.size() != k) return -1;
  // Permanent of the incidence matrix by DP over column subsets.
  std::vector<long> dp(std::size_t{1} << k, 0);
  dp[0] = 1;
  for (std::size_t mask = 0; mask < dp.size(); ++mask) {
    if (dp[mask] == 0) continue;
    const std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (row >= k) continue;
    for (std::size_t col = 0; col < k; ++col)
      if (!((mask >> col) & 1u) && polys[row].degree(idx[col]) > 0) dp[mask | (std::size_t{1} << col)] += dp[mask] * polys[row].degree(idx[col]);
  }
  return dp.back();
}

}  // namespace dnash
