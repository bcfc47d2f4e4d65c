#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dnash/certifier.hpp"
#include "dnash/pipeline.hpp"
#include "dnash/poly_json.hpp"

using namespace dnash;

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
}

void emit(const nlohmann::json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error("cannot write " + out);
  f << j.dump(2) << '\n';
}

// "2^-64" or a plain rational.
Rational parse_tol(const std::string& s) {
  if (s.rfind("2^", 0) == 0) return pow2(std::stol(s.substr(2)));
  return parse_rational(s);
}

UniPoly read_poly(const nlohmann::json& j) {
  if (j.is_array()) return poly_from_json(j);
  if (j.is_object() && j.contains("poly")) return poly_from_json(j["poly"]);
  throw Error("polynomial JSON must be a coefficient array or {\"poly\": [...]}");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Games with a unique, high-degree, fully mixed Nash equilibrium"};
  app.require_subcommand(1);
  std::string out;

  auto* syn = app.add_subcommand("synthesize", "Build and certify an instance");
  SynthesisConfig cfg;
  std::string magnitude = "1/8", tol = "2^-64";
  bool no_repair = false;
  syn->add_option("--n", cfg.n, "Player count")->required();
  syn->add_option("--seed", cfg.seed, "Seed of the resample chain");
  syn->add_option("--magnitude", magnitude, "Largest perturbation size");
  syn->add_option("--denom-bound", cfg.denom_bound, "Largest perturbation denominator");
  syn->add_option("--max-resamples", cfg.max_resamples, "Resample budget");
  syn->add_option("--tol", tol, "Box width, e.g. 2^-64");
  syn->add_option("--prime-budget", cfg.prime_budget, "Primes scanned per certificate");
  syn->add_flag("--no-density-repair", no_repair, "Do not shift sparse eliminants");
  syn->add_flag("--allow-large", cfg.allow_large, "Permit n > 5 (no runtime guarantee)");
  syn->add_option("--out", out, "Write the bundle here instead of stdout");

  auto* ver = app.add_subcommand("verify", "Re-run the solver and certifier on a game or bundle");
  std::string path;
  std::string vtol = "2^-64";
  std::size_t vbudget = 2000;
  ver->add_option("file", path, "Game, payoff tensor or bundle JSON")->required();
  ver->add_option("--tol", vtol, "Box width");
  ver->add_option("--prime-budget", vbudget, "Primes scanned per certificate");
  ver->add_option("--out", out, "Write the report here instead of stdout");

  auto* mv = app.add_subcommand("mixedvol", "Derangement, mixed volume and permanent counts");
  int lo = 2, hi = 8;
  mv->add_option("lo", lo, "Smallest n")->required();
  mv->add_option("hi", hi, "Largest n")->required();

  auto* gal = app.add_subcommand("galois", "Density, irreducibility and symmetric-group certificate");
  std::size_t gbudget = 2000;
  gal->add_option("file", path, "Polynomial JSON (ascending coefficients)")->required();
  gal->add_option("--prime-budget", gbudget, "Primes scanned");
  gal->add_option("--out", out, "Write the report here instead of stdout");

  auto* nec = app.add_subcommand("ne", "Enumerate all Nash equilibria");
  std::string ntol = "2^-64";
  nec->add_option("file", path, "Game, payoff tensor or bundle JSON")->required();
  nec->add_option("--tol", ntol, "Box width");
  nec->add_option("--out", out, "Write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (syn->parsed()) {
      cfg.magnitude = parse_rational(magnitude);
      cfg.tol = parse_tol(tol);
      cfg.density_repair = !no_repair;
      const SynthesisResult r = synthesize(cfg);
      if (!r.bundle) {
        emit(failure_report(r), out);
        return 1;
      }
      emit(bundle_to_json(*r.bundle), out);
      return 0;
    }
    if (ver->parsed()) {
      const VerifyReport r = verify(read_game(read_json(path)), parse_tol(vtol), vbudget);
      emit(verify_report_to_json(r), out);
      return r.pass() ? 0 : 1;
    }
    if (mv->parsed()) {
      if (lo < 2 || hi > 10 || lo > hi) throw Error("mixedvol range must lie in [2, 10]");
      nlohmann::json rows = nlohmann::json::array();
      bool ok = true;
      for (int n = lo; n <= hi; ++n) {
        const CountCheck c = count_check(n);
        ok = ok && c.agree();
        rows.push_back({{"n", n},
                        {"derangement", format_integer(c.derangement)},
                        {"mixed_volume", format_integer(c.mixed_volume)},
                        {"permanent", format_integer(c.permanent)},
                        {"agree", c.agree()}});
      }
      emit({{"counts", rows}, {"pass", ok}}, out);
      return ok ? 0 : 1;
    }
    if (gal->parsed()) {
      const UniPoly p = read_poly(read_json(path)).primitive();
      if (p.degree() < 2) throw Error("galois needs degree at least 2");
      if (squarefree_part(p).degree() != p.degree()) throw Error("polynomial is not squarefree");
      GaloisOptions go;
      go.prime_budget = gbudget;
      const GaloisCertificate g = certify_full_symmetric(p, go);
      const IrreducibilityResult irr = certify_irreducible(p, gbudget);
      const bool pass = g.verdict == GaloisCertificate::Verdict::CertifiedSymmetric;
      emit({{"poly", poly_to_json(p)},
            {"degree", p.degree()},
            {"density", density_to_json(check_dense(p))},
            {"irreducibility", irreducibility_to_json(irr)},
            {"galois", galois_to_json(g)},
            {"pass", pass}},
           out);
      return pass ? 0 : 1;
    }
    if (nec->parsed()) {
      const GameInput in = read_game(read_json(path));
      const NEReport r = enumerate_ne(in.c, parse_tol(ntol));
      nlohmann::json j = ne_report_to_json(r);
      j["pass"] = r.complete;
      emit(j, out);
      return r.complete ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cout << nlohmann::json{{"error", e.what()}, {"pass", false}}.dump(2) << '\n';
    return 2;
  }
  return 1;
}
