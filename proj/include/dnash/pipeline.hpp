#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnash/certifier.hpp"
#include "dnash/game.hpp"
#include "dnash/solver.hpp"

namespace dnash {

struct SynthesisConfig {
  int n = 4;
  std::uint64_t seed = 1;
  Rational magnitude{1, 8};
  long denom_bound = 64;
  int max_resamples = 50;
  Rational tol = pow2(-64);
  std::size_t prime_budget = 2000;
  bool density_repair = true;
  /// n = 6 and above have no runtime guarantee.
  bool allow_large = false;

  void validate() const;
};

struct AttemptRecord {
  int index = 0;
  std::uint64_t seed = 0;
  std::string outcome;  // "pass" or the failing clause
  std::vector<Rational> lambda;
  double seconds = 0;   // not serialised
};

/// Solver, enumeration and certificate for one game.
struct Evaluation {
  CoeffVector c;
  SystemSolution solution;
  NEReport ne;
  InstanceCertificate certificate;
};

struct InstanceBundle {
  SynthesisConfig config;
  Evaluation eval;
  PayoffTensor tensor;
  int attempt = 0;
  std::uint64_t attempt_seed = 0;
  std::vector<Rational> lambda;
  std::vector<AttemptRecord> failures;
};

struct SynthesisResult {
  std::optional<InstanceBundle> bundle;
  std::vector<AttemptRecord> attempts;
  std::map<std::string, int> histogram;  // failure cause -> count
};

/// Seed of resample `index` in the chain started by `seed`.
std::uint64_t attempt_seed(std::uint64_t seed, int index);

/// First lambda on the ladder +-1/97, +-1/89, ..., +-1/2 with p(t + lambda) dense;
/// 0 when p is already dense.
std::optional<Rational> density_shift(const UniPoly& p);

Evaluation evaluate(const CoeffVector& c, const Rational& tol, std::size_t prime_budget);

SynthesisResult synthesize(const SynthesisConfig& cfg);

nlohmann::json config_to_json(const SynthesisConfig& cfg);
nlohmann::json bundle_to_json(const InstanceBundle& b);
nlohmann::json evaluation_to_json(const Evaluation& e);
nlohmann::json failure_report(const SynthesisResult& r);

enum class InputKind { CoeffGame, PayoffTensor, Bundle };
struct GameInput {
  InputKind kind;
  CoeffVector c;
  nlohmann::json raw;
};
/// Accepts a coefficient game, a payoff tensor or a bundle.
GameInput read_game(const nlohmann::json& j);

struct VerifyReport {
  Evaluation eval;
  std::optional<bool> matches_bundle;
  bool pass() const { return eval.certificate.pass() && matches_bundle.value_or(true); }
};
VerifyReport verify(const GameInput& in, const Rational& tol = pow2(-64), std::size_t prime_budget = 2000);
nlohmann::json verify_report_to_json(const VerifyReport& r);

}  // namespace dnash
