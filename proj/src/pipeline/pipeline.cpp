#include "dnash/pipeline.hpp"

#include <chrono>
#include <random>

#include "dnash/modp.hpp"
#include "dnash/poly_json.hpp"

namespace dnash {

void SynthesisConfig::validate() const {
  if (n < 3) throw Error("synthesis needs n >= 3");
  if (n > 5 && !allow_large) throw Error("n > 5 needs the explicit large-instance flag");
  if (n > kMaxPlayers) throw Error("n too large");
  if (max_resamples < 1) throw Error("max_resamples must be at least 1");
  if (sgn(magnitude) <= 0) throw Error("magnitude must be positive");
  if (denom_bound < 2) throw Error("denominator bound must be at least 2");
  if (sgn(tol) <= 0) throw Error("tolerance must be positive");
  if (prime_budget < 1) throw Error("prime budget must be positive");
}

std::uint64_t attempt_seed(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

std::optional<Rational> density_shift(const UniPoly& p) {
  if (check_dense(p).dense()) return Rational(0);
  std::vector<long> qs;
  for (long q = 97; q >= 2; --q)
    if (is_prime(static_cast<std::uint64_t>(q))) qs.push_back(q);
  for (long q : qs)
    for (int s : {1, -1}) {
      const Rational lambda(s, q);
      if (check_dense(p.taylor_shift(lambda)).dense()) return lambda;
    }
  return std::nullopt;
}

Evaluation evaluate(const CoeffVector& c, const Rational& tol, std::size_t prime_budget) {
  Evaluation e;
  e.c = c;
  SolveOptions opts;
  opts.tol = tol;
  e.solution = solve_system(advantage_system(c), (PlayerSet{1} << c.n()) - 1, opts);
  e.ne = enumerate_ne(c, tol, &e.solution, opts);
  CertifyOptions co;
  co.prime_budget = prime_budget;
  e.certificate = certify_instance(c, e.solution.eliminants, e.ne, co);
  return e;
}

namespace {

std::string solve_failure(const SystemSolution& s) {
  switch (s.status) {
    case SystemStatus::NoTorusSolution: return "no-torus-solution";
    case SystemStatus::Degenerate: return "degenerate-system";
    default: return {};
  }
}

}  // namespace

SynthesisResult synthesize(const SynthesisConfig& cfg) {
  cfg.validate();
  SynthesisResult res;
  SolveOptions opts;
  opts.tol = cfg.tol;
  const CoeffVector anchor = anchor_coeffs(cfg.n);
  for (int r = 0; r < cfg.max_resamples; ++r) {
    const auto start = std::chrono::steady_clock::now();
    AttemptRecord rec;
    rec.index = r;
    rec.seed = attempt_seed(cfg.seed, r);
    CoeffVector c = perturb(anchor, cfg.denom_bound, cfg.magnitude, rec.seed);
    auto finish = [&](std::string outcome) {
      rec.outcome = std::move(outcome);
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      res.attempts.push_back(rec);
      if (rec.outcome != "pass") ++res.histogram[rec.outcome];
    };

    SystemSolution sol = solve_system(advantage_system(c), (PlayerSet{1} << cfg.n) - 1, opts);
    if (std::string f = solve_failure(sol); !f.empty()) {
      finish(f);
      continue;
    }
    bool dense = true;
    for (const auto& e : sol.eliminants) dense = dense && check_dense(e.poly).dense();
    if (!dense && cfg.density_repair) {
      std::vector<Rational> lambda;
      std::vector<UniPoly> expected;
      for (const auto& e : sol.eliminants) {
        const auto l = density_shift(e.poly);
        if (!l) break;
        lambda.push_back(*l);
        expected.push_back(e.poly.taylor_shift(*l).primitive());
      }
      if (lambda.size() != sol.eliminants.size()) {
        finish("density");
        continue;
      }
      // The shifted game is solved from scratch; its eliminants must be the shifted ones.
      c = shift_coeffs(c, lambda);
      sol = solve_system(advantage_system(c), (PlayerSet{1} << cfg.n) - 1, opts);
      if (std::string f = solve_failure(sol); !f.empty()) {
        finish("after-shift-" + f);
        continue;
      }
      bool same = sol.eliminants.size() == expected.size();
      for (std::size_t i = 0; i < expected.size() && same; ++i) same = sol.eliminants[i].poly == expected[i];
      if (!same) {
        finish("shift-mismatch");
        continue;
      }
      rec.lambda = lambda;
    }
    Evaluation ev;
    ev.c = c;
    ev.solution = std::move(sol);
    ev.ne = enumerate_ne(c, cfg.tol, &ev.solution, opts);
    CertifyOptions co;
    co.prime_budget = cfg.prime_budget;
    ev.certificate = certify_instance(c, ev.solution.eliminants, ev.ne, co);
    if (!ev.certificate.pass()) {
      finish(ev.certificate.first_failure());
      continue;
    }
    finish("pass");
    InstanceBundle b;
    b.config = cfg;
    b.tensor = payoffs_from_advantage(c);
    b.eval = std::move(ev);
    b.attempt = r;
    b.attempt_seed = rec.seed;
    b.lambda = rec.lambda;
    for (const auto& a : res.attempts)
      if (a.outcome != "pass") b.failures.push_back(a);
    res.bundle = std::move(b);
    break;
  }
  return res;
}

nlohmann::json config_to_json(const SynthesisConfig& cfg) {
  return {{"n", cfg.n},
          {"seed", cfg.seed},
          {"magnitude", rational_to_json(cfg.magnitude)},
          {"denom_bound", cfg.denom_bound},
          {"max_resamples", cfg.max_resamples},
          {"tol", rational_to_json(cfg.tol)},
          {"prime_budget", cfg.prime_budget},
          {"density_repair", cfg.density_repair}};
}

nlohmann::json evaluation_to_json(const Evaluation& e) {
  nlohmann::json elim = nlohmann::json::array();
  for (const auto& x : e.solution.eliminants) elim.push_back(eliminant_to_json(x));
  nlohmann::json boxes = nlohmann::json::array();
  for (const auto& b : e.solution.boxes) boxes.push_back(box_to_json(b));
  return {{"game", game_to_json(e.c)},
          {"eliminants", elim},
          {"solver", {{"method", e.solution.method}, {"trace", e.solution.trace}, {"real_solutions", boxes}}},
          {"equilibria", ne_report_to_json(e.ne)},
          {"certificate", certificate_to_json(e.certificate)}};
}

namespace {

nlohmann::json attempt_json(const AttemptRecord& a) {
  nlohmann::json lambda = nlohmann::json::array();
  for (const auto& l : a.lambda) lambda.push_back(rational_to_json(l));
  return {{"attempt", a.index}, {"seed", a.seed}, {"outcome", a.outcome}, {"lambda", lambda}};
}

}  // namespace

nlohmann::json bundle_to_json(const InstanceBundle& b) {
  nlohmann::json j = evaluation_to_json(b.eval);
  j["format"] = "dnash-bundle";
  j["config"] = config_to_json(b.config);
  j["payoffs"] = tensor_to_json(b.tensor);
  nlohmann::json lambda = nlohmann::json::array();
  for (const auto& l : b.lambda) lambda.push_back(rational_to_json(l));
  nlohmann::json failures = nlohmann::json::array();
  std::map<std::string, int> hist;
  for (const auto& f : b.failures) {
    failures.push_back(attempt_json(f));
    ++hist[f.outcome];
  }
  j["provenance"] = {{"seed", b.config.seed},
                     {"resamples", b.attempt},
                     {"attempt_seed", b.attempt_seed},
                     {"lambda", lambda},
                     {"failures", failures},
                     {"failure_histogram", hist}};
  return j;
}

nlohmann::json failure_report(const SynthesisResult& r) {
  nlohmann::json attempts = nlohmann::json::array();
  for (const auto& a : r.attempts) attempts.push_back(attempt_json(a));
  return {{"error", "resample budget exhausted"}, {"failure_histogram", r.histogram}, {"attempts", attempts}};
}

GameInput read_game(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("game JSON must be an object");
  if (j.contains("game") && j.contains("certificate")) return {InputKind::Bundle, game_from_json(j["game"]), j};
  if (j.contains("coeffs")) return {InputKind::CoeffGame, game_from_json(j), j};
  if (j.contains("u")) return {InputKind::PayoffTensor, advantage_from_payoffs(tensor_from_json(j)), j};
  throw Error("unrecognised input: expected a coefficient game, a payoff tensor or a bundle");
}

VerifyReport verify(const GameInput& in, const Rational& tol, std::size_t prime_budget) {
  VerifyReport r;
  if (in.kind == InputKind::Bundle) {
    const auto& cfg = in.raw.value("config", nlohmann::json::object());
    const Rational t = cfg.contains("tol") ? rational_from_json(cfg["tol"]) : tol;
    const std::size_t budget = cfg.value("prime_budget", prime_budget);
    r.eval = evaluate(in.c, t, budget);
    r.matches_bundle = certificate_to_json(r.eval.certificate) == in.raw["certificate"];
  } else {
    r.eval = evaluate(in.c, tol, prime_budget);
  }
  return r;
}

nlohmann::json verify_report_to_json(const VerifyReport& r) {
  nlohmann::json j = evaluation_to_json(r.eval);
  j["pass"] = r.pass();
  if (r.matches_bundle) j["matches_bundle"] = *r.matches_bundle;
  if (r.eval.solution.status != SystemStatus::Ok)
    j["error"] = r.eval.solution.status == SystemStatus::Degenerate ? "degenerate system" : "no torus solution";
  return j;
}

}  // namespace dnash
