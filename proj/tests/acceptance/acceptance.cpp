// Acceptance checks, one criterion per invocation. Prints exactly one line
// "criterion N: PASS|FAIL <detail>" and exits 0 on PASS.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "dnash/certifier.hpp"
#include "dnash/modp.hpp"
#include "dnash/pipeline.hpp"
#include "dnash/poly_json.hpp"

using namespace dnash;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string cli_path, fixtures;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << "s";
  return os.str();
}

struct CliRun {
  int status = -1;
  nlohmann::json out;
};

CliRun run_cli(const std::string& args) {
  CliRun r;
  const std::string cmd = cli_path + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::string text;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = nlohmann::json::parse(text, nullptr, false);
  return r;
}

// Criterion 1: counts 2..8.
Verdict mixedvol() {
  const auto t0 = Clock::now();
  const CliRun r = run_cli("mixedvol 2 8");
  const double secs = since(t0);
  const std::vector<std::string> want{"1", "2", "9", "44", "265", "1854", "14833"};
  if (r.status != 0 || r.out.is_discarded()) return {false, "CLI failed"};
  std::vector<std::string> got, mv;
  for (const auto& row : r.out["counts"]) {
    got.push_back(row["derangement"]);
    mv.push_back(row["mixed_volume"]);
  }
  std::string list;
  for (const auto& g : mv) list += (list.empty() ? "" : ", ") + g;
  const bool ok = got == want && mv == want && secs < 5;
  return {ok, "mixed volumes " + list + " in " + fmt(secs)};
}

Rational parse_q(const nlohmann::json& j) {
  Rational q(j.get<std::string>());
  q.canonicalize();
  return q;
}

// Criterion 2: `ne` on the anchor games n = 4, 5, plus their eliminants.
Verdict anchors() {
  const auto t0 = Clock::now();
  std::string detail;
  bool ok = true;
  for (int n : {4, 5}) {
    const CliRun r = run_cli("ne " + fixtures + "/anchor" + std::to_string(n) + ".json");
    const auto& eq = r.out["equilibria"];
    bool centre = r.status == 0 && r.out["complete"] == true && eq.size() == 1 && r.out["fully_mixed_count"] == 1;
    if (centre)
      for (const auto& x : eq[0]["coordinates"]) {
        const Rational lo = parse_q(x.is_array() ? x[0] : x), hi = parse_q(x.is_array() ? x[1] : x);
        centre = centre && lo <= Rational(1, 2) && Rational(1, 2) <= hi;
      }
    bool linear = true;
    const CoeffVector c = anchor_coeffs(n);
    for (int i = 0; i < n; ++i) {
      const UniPoly e = eliminate(c, i).poly;
      linear = linear && (e == UniPoly{-1, 2} || e == UniPoly{1, -2});
    }
    ok = ok && centre && linear;
    detail += "n=" + std::to_string(n) + ": " + std::to_string(eq.size()) + " NE" +
              (centre ? " at centre" : " (not the centre)") + (linear ? ", eliminants 2t-1; " : ", eliminant mismatch; ");
  }
  const double secs = since(t0);
  return {ok && secs < 10, detail + "in " + fmt(secs)};
}

// Re-checks a bundle from its JSON alone, as an outside reader would.
bool bundle_ok(const nlohmann::json& b, int n, std::string& why) {
  const int D = static_cast<int>(derangement(n).get_si());
  const auto& ne = b["equilibria"];
  std::size_t patterns = 1;
  for (int i = 0; i < n; ++i) patterns *= 3;
  if (ne["equilibrium_count"] != 1 || ne["fully_mixed_count"] != 1) return why = "equilibrium count", false;
  if (ne["patterns_decided"] != patterns || ne["patterns_total"] != patterns || ne["complete"] != true)
    return why = "undecided patterns", false;
  const auto& players = b["certificate"]["players"];
  if (static_cast<int>(players.size()) != n) return why = "player certificates missing", false;
  for (const auto& p : players) {
    const UniPoly poly = poly_from_json(p["poly"]);
    if (poly.degree() != D) return why = "degree", false;
    if (!check_dense(poly).dense()) return why = "density", false;
    if (p["irreducibility"]["verdict"] != "Irreducible") return why = "irreducibility", false;
    const auto wit = cycle_type(poly, p["irreducibility"]["witness_prime"].get<std::uint32_t>());
    if (!wit || wit->size() != 1) return why = "irreducibility witness", false;
    const auto& g = p["galois"];
    if (g["verdict"] != "CertifiedSymmetric" || g["degree"] != D) return why = "galois", false;
    bool a = false, q = false, odd = false;
    for (const auto& e : g["evidence"]) {
      const auto type = cycle_type(poly, e["prime"].get<std::uint32_t>());
      if (!type || *type != e["cycle_type"].get<std::vector<int>>()) return why = "evidence does not re-verify", false;
      a = a || type->size() == 1;
      q = q || jordan_part(*type, D) != 0;
      odd = odd || is_odd_permutation(*type);
    }
    if (!(a && q && odd)) return why = "evidence incomplete", false;
  }
  const PayoffTensor t = tensor_from_json(b["payoffs"]);
  const CoeffVector c = game_from_json(b["game"]);
  const CoeffVector back = advantage_from_payoffs(t);
  if (t.M < 1) return why = "multiplier", false;
  for (int i = 0; i < n; ++i)
    for (PlayerSet s = 0; s < (1u << n); ++s)
      if (!contains(s, i) && back.at(i, s) != c.at(i, s) * Rational(t.M)) return why = "payoff tensor", false;
  return true;
}

Verdict synth(int n, int need, double per_attempt, double total_limit) {
  const auto t0 = Clock::now();
  int ok = 0;
  double worst = 0;
  std::string notes;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SynthesisConfig cfg;
    cfg.n = n;
    cfg.seed = seed;
    const SynthesisResult r = synthesize(cfg);
    for (const auto& a : r.attempts) worst = std::max(worst, a.seconds);
    std::string why;
    if (r.bundle && bundle_ok(bundle_to_json(*r.bundle), n, why)) {
      ++ok;
    } else {
      notes += " seed " + std::to_string(seed) + ": " + (r.bundle ? why : "budget exhausted") + ";";
    }
  }
  const double secs = since(t0);
  const bool pass = ok >= need && worst < per_attempt && secs < total_limit;
  return {pass, std::to_string(ok) + "/10 seeds certified (need " + std::to_string(need) + "), slowest attempt " +
                    fmt(worst) + ", total " + fmt(secs) + notes};
}

// Criterion 5: Galois fixtures through the CLI.
Verdict fixtures_check() {
  const auto t0 = Clock::now();
  const CliRun s = run_cli("galois " + fixtures + "/selmer9.json");
  const CliRun r = run_cli("galois " + fixtures + "/radical8.json");
  const CliRun q = run_cli("galois " + fixtures + "/square_minus_one.json");
  const double secs = since(t0);
  const bool a = s.status == 0 && s.out["galois"]["verdict"] == "CertifiedSymmetric" && s.out["galois"]["degree"] == 9;
  const bool b = r.out["galois"]["verdict"] == "Inconclusive" && r.out["density"]["dense"] == false;
  const bool c = q.out["irreducibility"]["verdict"] == "Reducible";
  return {a && b && c && secs < 10,
          std::string("t^9-t-1 ") + (a ? "S9" : "not certified") + ", degree-8 radical " + (b ? "inconclusive and sparse" : "wrong") +
              ", t^2-1 " + (c ? "reducible" : "wrong") + " in " + fmt(secs)};
}

Rational rnd(std::mt19937_64& rng, long num, long den) {
  Rational q(std::uniform_int_distribution<long>(-num, num)(rng), std::uniform_int_distribution<long>(1, den)(rng));
  q.canonicalize();
  return q;
}

// Criterion 6: the eliminant of the shifted game is P_i(t + lambda_i), and
// shifting back by -lambda restores c.
Verdict shift_identity() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(6);
  int good = 0;
  std::string notes;
  for (int k = 0; k < 100; ++k) {
    const int n = 3 + k % 2;
    CoeffVector c(n);
    for (int i = 0; i < n; ++i)
      for (PlayerSet s = 0; s < (1u << n); ++s)
        if (!contains(s, i)) c.set(i, s, rnd(rng, 50, 30));
    std::vector<Rational> lambda, minus;
    for (int j = 0; j < n; ++j) {
      lambda.push_back(rnd(rng, 5, 97));
      minus.push_back(-lambda.back());
    }
    const CoeffVector d = shift_coeffs(c, lambda);
    bool same = shift_coeffs(d, minus) == c;
    try {
      for (int i = 0; i < n && same; ++i) {
        const UniPoly p = eliminate(c, i).poly, q = eliminate(d, i).poly;
        same = q == p.taylor_shift(lambda[static_cast<std::size_t>(i)]).primitive();
      }
    } catch (const Error& e) {
      same = false;
      notes += " case " + std::to_string(k) + ": " + e.what() + ";";
    }
    good += same;
  }
  const double secs = since(t0);
  return {good == 100 && secs < 120, std::to_string(good) + "/100 shifted eliminants and round trips agree, " + fmt(secs) + notes};
}

PayoffTensor random_tensor(std::mt19937_64& rng, int n, long height) {
  PayoffTensor g = make_tensor(n);
  std::uniform_int_distribution<long> d(-height, height);
  for (auto& row : g.u)
    for (auto& v : row) v = d(rng);
  return g;
}

// Criterion 7: interior equilibria from the enumeration equal the solver's boxes
// that lie inside the open cube.
Verdict interior_equals_boxes() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(7);
  const Rational tol = pow2(-64);
  int good = 0;
  std::string notes;
  for (int k = 0; k < 20; ++k) {
    const CoeffVector c = advantage_from_payoffs(random_tensor(rng, 4, 50));
    try {
      std::vector<RootBox> inside;
      for (const auto& b : solve_boxes(c, tol))
        if (std::all_of(b.intervals.begin(), b.intervals.end(), [](const Interval& iv) { return iv.low > 0 && iv.high < 1; }))
          inside.push_back(b);
      const NEReport r = enumerate_ne(c, tol);
      std::vector<const Equilibrium*> mixed;
      for (const auto& e : r.equilibria)
        if (std::all_of(e.pattern.begin(), e.pattern.end(), [](Strategy s) { return s == Strategy::Mixed; })) mixed.push_back(&e);
      bool same = mixed.size() == inside.size();
      for (const auto* e : mixed) {
        bool hit = false;
        for (const auto& b : inside) {
          bool all = true;
          for (std::size_t j = 0; j < 4; ++j)
            all = all && e->coords[j].overlaps(b.intervals[j]) && e->coords[j].width() <= tol && b.intervals[j].width() <= tol;
          hit = hit || all;
        }
        same = same && hit;
      }
      good += same;
      if (!same) notes += " game " + std::to_string(k) + " differs;";
    } catch (const Error& e) {
      notes += " game " + std::to_string(k) + ": " + e.what() + ";";
    }
  }
  const double secs = since(t0);
  return {good == 20 && secs < 600, std::to_string(good) + "/20 games agree, " + fmt(secs) + notes};
}

// Criterion 8: pure equilibria against brute-force best responses.
Verdict pure_equilibria() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(8);
  int good = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 3;
    const PayoffTensor g = random_tensor(rng, n, 4);
    std::vector<PlayerSet> brute;
    for (PlayerSet a = 0; a < (1u << n); ++a) {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        ok = g.u[static_cast<std::size_t>(i)][a] >= g.u[static_cast<std::size_t>(i)][a ^ (1u << i)];
      if (ok) brute.push_back(a);
    }
    const NEReport r = enumerate_ne(g, pow2(-64));
    std::vector<PlayerSet> got;
    for (const auto& e : r.equilibria) {
      if (std::any_of(e.pattern.begin(), e.pattern.end(), [](Strategy s) { return s == Strategy::Mixed; })) continue;
      PlayerSet a = 0;
      for (int i = 0; i < n; ++i)
        if (e.pattern[static_cast<std::size_t>(i)] == Strategy::Pure1) a |= 1u << i;
      got.push_back(a);
    }
    std::sort(got.begin(), got.end());
    good += got == brute;
  }
  const double secs = since(t0);
  return {good == 100 && secs < 60, std::to_string(good) + "/100 games agree, " + fmt(secs)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <criterion 1-8> [cli-path] [fixture-dir]\n";
    return 2;
  }
  const int k = std::atoi(argv[1]);
  if (argc > 2) cli_path = argv[2];
  if (argc > 3) fixtures = argv[3];
  Verdict v;
  try {
    switch (k) {
      case 1: v = mixedvol(); break;
      case 2: v = anchors(); break;
      case 3: v = synth(4, 9, 60, 1800); break;
      case 4: v = synth(5, 7, 900, 1e9); break;
      case 5: v = fixtures_check(); break;
      case 6: v = shift_identity(); break;
      case 7: v = interior_equals_boxes(); break;
      case 8: v = pure_equilibria(); break;
      default: std::cerr << "unknown criterion\n"; return 2;
    }
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  std::cout << "criterion " << k << ": " << (v.pass ? "PASS " : "FAIL ") << v.detail << std::endl;
  return v.pass ? 0 : 1;
}
