#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnash/game.hpp"
#include "dnash/solver.hpp"
#include "dnash/unipoly.hpp"

namespace dnash {

/// !n via !n = (n-1)(!(n-1) + !(n-2)).
Integer derangement(int n);

/// Coefficient of l_1...l_n in prod_j (sum_{i != j} l_i), expanded over multilinear
/// monomials. 2 <= n <= 10.
Integer mixed_volume_full(int n);

/// Permanent of the all-ones-minus-identity matrix, by Ryser's formula.
Integer permanent_j_minus_i(int n);

struct CountCheck {
  int n = 0;
  Integer derangement, mixed_volume, permanent;
  bool agree() const { return derangement == mixed_volume && mixed_volume == permanent; }
};
CountCheck count_check(int n);

struct DensityReport {
  UniPoly poly;
  std::vector<int> zero_indices;
  bool dense() const { return zero_indices.empty(); }
};
DensityReport check_dense(const UniPoly& p);

struct IrreducibilityResult {
  enum class Verdict { Irreducible, Reducible, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  std::uint32_t witness_prime = 0;         // Irreducible
  std::optional<Rational> rational_root;   // Reducible
  std::size_t primes_scanned = 0;
  /// Factor degrees still possible after the degree-pattern sieve.
  std::vector<int> possible_factor_degrees;
};
IrreducibilityResult certify_irreducible(const UniPoly& p, std::size_t prime_budget = 2000);
std::string verdict_name(IrreducibilityResult::Verdict v);

enum class EvidenceRole {
  TransitivityDCycle,
  JordanQCycle,
  OddPermutation,
  // Used when no Jordan prime lies in (D/2, D-2).
  DoublyTransitive,
  Transposition,
  NonsquareDiscriminant,
};
std::string role_name(EvidenceRole r);

struct GaloisEvidence {
  std::uint32_t prime = 0;   // 0 for the discriminant route
  std::vector<int> cycle_type;
  EvidenceRole role;
};

struct GaloisCertificate {
  enum class Verdict { CertifiedSymmetric, Inconclusive };
  UniPoly poly;
  int degree = 0;
  std::vector<GaloisEvidence> evidence;
  Verdict verdict = Verdict::Inconclusive;
  std::size_t primes_scanned = 0;
  std::string rule;  // "jordan" or "small-degree"
};

struct GaloisOptions {
  std::size_t prime_budget = 2000;
  /// Discriminant squareness as extra evidence against A_D, only up to this degree.
  int discriminant_max_degree = 20;
};

/// Throws Error when deg p < 2.
GaloisCertificate certify_full_symmetric(const UniPoly& p, const GaloisOptions& opts = {});

/// Cycle type rules used by the certificate, exposed for re-checking.
bool is_odd_permutation(const std::vector<int>& type);
/// The unique part q of `type` with q prime, D/2 < q < D-2 and no other part divisible
/// by q; 0 when there is none.
int jordan_part(const std::vector<int>& type, int D);
/// Some power of an element with this cycle type is a transposition.
bool powers_to_transposition(const std::vector<int>& type);

struct ClauseResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct PlayerCertificate {
  int player = 0;
  UniPoly poly;
  DensityReport density;
  IrreducibilityResult irreducible;
  std::optional<GaloisCertificate> galois;
};

struct InstanceCertificate {
  int n = 0;
  std::vector<ClauseResult> clauses;
  std::vector<PlayerCertificate> players;
  bool irradical = false;
  bool pass() const;
  /// First failing clause, empty when passing.
  std::string first_failure() const;
};

struct CertifyOptions {
  std::size_t prime_budget = 2000;
};

InstanceCertificate certify_instance(const CoeffVector& c, const std::vector<Eliminant>& eliminants,
                                     const NEReport& ne, const CertifyOptions& opts = {});

nlohmann::json density_to_json(const DensityReport& d);
nlohmann::json irreducibility_to_json(const IrreducibilityResult& r);
nlohmann::json galois_to_json(const GaloisCertificate& g);
nlohmann::json certificate_to_json(const InstanceCertificate& c);

}  // namespace dnash
