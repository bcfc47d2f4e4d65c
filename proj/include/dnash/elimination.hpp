#pragma once

#include <string>
#include <vector>

#include "dnash/mpoly.hpp"
#include "dnash/unipoly.hpp"

namespace dnash {

/// Order in which variables are eliminated, and which of the lowest-degree polynomials
/// containing the current variable serves as pivot.
struct EliminationRoute {
  std::vector<int> order;
  int pivot_rank = 0;

  std::string describe() const;
};

enum class EliminationStatus { Ok, NoSolution, Degenerate };

struct RouteResult {
  EliminationStatus status = EliminationStatus::Degenerate;
  UniPoly poly;  // nonconstant, primitive, in the kept variable (status Ok)
};

/// Iterated resultants along one route. keep = -1 eliminates every variable, which can
/// only end in NoSolution or Degenerate. Monomial factors in the `strip` variables are
/// divided out after every step, which only forgets solutions with such a coordinate zero.
RouteResult run_route(const std::vector<ZPoly>& polys, int keep, const EliminationRoute& route, unsigned strip);

/// The candidate routes for eliminating `vars` minus `keep` (-1: all of them), in ladder order.
std::vector<EliminationRoute> route_ladder(unsigned vars, int keep);

struct EliminationResult {
  EliminationStatus status = EliminationStatus::Degenerate;
  /// Squarefree gcd of the route eliminants, t-factors removed (status Ok).
  UniPoly poly;
  std::vector<std::string> trace;
};

/// Runs routes until the gcd of their eliminants has degree at most `degree_target`
/// (negative: no target) or `max_routes` routes succeeded. The roots of the result
/// include the `keep` coordinate of every solution with nonzero `strip` coordinates.
/// When `keep` is itself in `strip`, the factor t is removed.
EliminationResult eliminate_system(const std::vector<ZPoly>& polys, int keep, unsigned strip, int degree_target,
                                   int max_routes);

/// True when some route derives a nonzero constant, or the route eliminants of one
/// variable have no common root. Either proves the polynomials have
/// no common zero with the `strip` coordinates nonzero.
bool proves_no_torus_solution(const std::vector<ZPoly>& polys, unsigned strip, int max_routes);

/// Multihomogeneous Bezout number of a multi-affine square system: the permanent of the
/// variable-incidence matrix. Bounds the number of isolated solutions.
long bezout_bound(const std::vector<ZPoly>& polys, unsigned vars);

}  // namespace dnash
