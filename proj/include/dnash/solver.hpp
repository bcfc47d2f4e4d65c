#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnash/game.hpp"
#include "dnash/multimodular.hpp"
#include "dnash/roots.hpp"
#include "dnash/unipoly.hpp"

namespace dnash {

struct Eliminant {
  int player = 0;  // 0-based
  UniPoly poly;    // primitive, positive leading coefficient
  std::vector<std::string> provenance;
};

struct RootBox {
  enum class Status { VerifiedSolution, Spurious };
  std::vector<Interval> intervals;
  Status status = Status::VerifiedSolution;
};

struct SolveOptions {
  Rational tol = pow2(-64);
  /// Undecided candidates are retried with halved tolerance down to this width.
  Rational min_tol = pow2(-512);
  /// Usable primes for the multimodular path.
  std::size_t max_primes = 6000;
  /// Routes tried by the resultant path before giving up on reaching the root count.
  int max_routes = 12;
};

enum class SystemStatus { Ok, NoTorusSolution, Degenerate };

/// Torus solutions of a square multi-affine system: eliminants for every unknown and
/// verified boxes around the real solutions.
struct SystemSolution {
  SystemStatus status = SystemStatus::Degenerate;
  std::vector<int> unknowns;            // variable indices, ascending
  std::vector<Eliminant> eliminants;    // aligned with unknowns
  std::vector<RootBox> boxes;           // intervals aligned with unknowns
  bool undecided = false;               // a candidate survived every tolerance
  std::string method;
  std::vector<std::string> trace;

  // Kept for exact sign decisions at the solutions.
  std::vector<ZPoly> equations;
  std::optional<Parametrisation> parametrisation;
  std::vector<Interval> theta;          // parametrised path: parameter root of each box
};

/// Solves eqs[k] = 0 (k = 0..|unknowns|-1) on the torus. Each equation may only use the
/// given unknowns.
SystemSolution solve_system(const std::vector<MultiAffinePoly>& eqs, PlayerSet unknowns,
                            const SolveOptions& opts = {});

/// Sign (-1, 0, 1) of h at the solution in box `index`. h may only use the unknowns.
int exact_sign_at(const MultiAffinePoly& h, const SystemSolution& sol, std::size_t index);

/// The advantage system of c as a list of equations over all players.
std::vector<MultiAffinePoly> advantage_system(const CoeffVector& c);

/// Throws Error("degenerate system ...") when the solution set is positive dimensional.
Eliminant eliminate(const CoeffVector& c, int player, const SolveOptions& opts = {});
std::vector<RootBox> solve_boxes(const CoeffVector& c, const Rational& tol);

enum class Strategy : char { Pure0 = '0', Pure1 = '1', Mixed = 'M' };
using SupportPattern = std::vector<Strategy>;

std::string pattern_name(const SupportPattern& p);
/// Pattern number k in base 3, player 0 as the most significant digit (0, 1, M).
SupportPattern pattern_from_index(int n, std::size_t k);

struct Equilibrium {
  SupportPattern pattern;
  /// One interval per player: a point for pure players, a verified box side for mixed ones.
  std::vector<Interval> coords;
};

struct NEReport {
  int n = 0;
  std::vector<Equilibrium> equilibria;
  bool complete = true;
  std::vector<std::string> degenerate_patterns;
  std::vector<std::string> undecided_patterns;
  std::size_t patterns_decided = 0;
  std::size_t patterns_total = 0;

  std::size_t fully_mixed_count() const;
};

/// Exhaustive enumeration over all 3^n support patterns. `full` may carry an already
/// computed solution of the fully mixed system.
NEReport enumerate_ne(const CoeffVector& c, const Rational& tol, const SystemSolution* full = nullptr,
                      const SolveOptions& opts = {});
NEReport enumerate_ne(const PayoffTensor& g, const Rational& tol);

nlohmann::json ne_report_to_json(const NEReport& r);
nlohmann::json eliminant_to_json(const Eliminant& e);
nlohmann::json box_to_json(const RootBox& b);

}  // namespace dnash
