#include "dnash/game.hpp"

#include <algorithm>
#include <random>

#include "dnash/poly_json.hpp"

namespace dnash {

MultiAffinePoly::MultiAffinePoly(int n) : n_(n), c_(std::size_t{1} << n) {
  if (n < 1 || n > kMaxPlayers) throw Error("player count out of range");
}

bool MultiAffinePoly::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

PlayerSet MultiAffinePoly::variables() const {
  PlayerSet u = 0;
  for (PlayerSet s = 0; s < c_.size(); ++s)
    if (sgn(c_[s]) != 0) u |= s;
  return u;
}

Rational MultiAffinePoly::evaluate(const std::vector<Rational>& x) const {
  Rational total(0);
  for (PlayerSet s = 0; s < c_.size(); ++s) {
    if (sgn(c_[s]) == 0) continue;
    Rational term = c_[s];
    for (int j = 0; j < n_; ++j)
      if (contains(s, j)) term *= x[static_cast<std::size_t>(j)];
    total += term;
  }
  return total;
}

Interval MultiAffinePoly::range(const std::vector<Interval>& box) const {
  // Affine in each variable separately, so the extremes sit at vertices.
  const PlayerSet vars = variables();
  std::vector<int> idx;
  for (int j = 0; j < n_; ++j)
    if (contains(vars, j)) idx.push_back(j);
  std::vector<Rational> x(static_cast<std::size_t>(n_));
  Rational lo, hi;
  for (std::uint32_t corner = 0; corner < (1u << idx.size()); ++corner) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const auto& iv = box[static_cast<std::size_t>(idx[k])];
      x[static_cast<std::size_t>(idx[k])] = ((corner >> k) & 1u) ? iv.high : iv.low;
    }
    const Rational v = evaluate(x);
    if (corner == 0 || v < lo) lo = v;
    if (corner == 0 || v > hi) hi = v;
  }
  return {lo, hi};
}

MultiAffinePoly MultiAffinePoly::substitute(PlayerSet fixed, const std::vector<Rational>& values) const {
  MultiAffinePoly r(n_);
  for (PlayerSet s = 0; s < c_.size(); ++s) {
    if (sgn(c_[s]) == 0) continue;
    Rational term = c_[s];
    for (int j = 0; j < n_; ++j)
      if (contains(s & fixed, j)) term *= values[static_cast<std::size_t>(j)];
    r.c_[s & ~fixed] += term;
  }
  return r;
}

ZPoly MultiAffinePoly::to_zpoly() const {
  Integer den(1);
  for (const auto& q : c_)
    if (sgn(q) != 0) den = lcm(den, q.get_den());
  std::vector<ZPoly::Term> t;
  for (PlayerSet s = 0; s < c_.size(); ++s) {
    if (sgn(c_[s]) == 0) continue;
    Monomial m = 0;
    for (int j = 0; j < n_; ++j)
      if (contains(s, j)) m += unit_monomial(j);
    t.emplace_back(m, Integer(c_[s].get_num() * (den / c_[s].get_den())));
  }
  return primitive(ZPoly(IntegerRing{}, std::move(t)));
}

CoeffVector::CoeffVector(int n) : n_(n) {
  if (n < 2 || n > kMaxPlayers) throw Error("player count must be between 2 and " + std::to_string(kMaxPlayers));
  f_.assign(static_cast<std::size_t>(n), MultiAffinePoly(n));
}

void CoeffVector::check(int i, PlayerSet s) const {
  if (i < 0 || i >= n_) throw Error("player index out of range");
  if (s >= (1u << n_)) throw Error("subset mentions a player beyond n");
  if (contains(s, i)) throw Error("f_i cannot mention x_i");
}

const Rational& CoeffVector::at(int i, PlayerSet s) const {
  check(i, s);
  return f_[static_cast<std::size_t>(i)].coeff(s);
}

void CoeffVector::set(int i, PlayerSet s, Rational v) {
  check(i, s);
  f_[static_cast<std::size_t>(i)].set(s, std::move(v));
}

std::size_t CoeffVector::support_size() const {
  std::size_t count = 0;
  for (int i = 0; i < n_; ++i)
    for (PlayerSet s = 0; s < (1u << n_); ++s)
      if (!contains(s, i) && sgn(at(i, s)) != 0) ++count;
  return count;
}

bool CoeffVector::full_support() const { return support_size() == size(); }

PayoffTensor make_tensor(int n) {
  if (n < 1 || n > kMaxPlayers) throw Error("player count out of range");
  PayoffTensor g;
  g.n = n;
  g.u.assign(static_cast<std::size_t>(n), std::vector<Integer>(std::size_t{1} << n, Integer(0)));
  return g;
}

MultiAffineSystem advantage_from_payoffs(const PayoffTensor& g) {
  MultiAffineSystem sys(g.n);
  const PlayerSet all = (1u << g.n) - 1;
  for (int i = 0; i < g.n; ++i) {
    const auto& u = g.u.at(static_cast<std::size_t>(i));
    std::vector<Integer> d(std::size_t{1} << g.n, Integer(0));
    for (PlayerSet v = 0; v <= all; ++v)
      if (!contains(v, i)) d[v] = u[v | (1u << i)] - u[v];
    // Moebius transform over subsets of the other players.
    for (int j = 0; j < g.n; ++j) {
      if (j == i) continue;
      for (PlayerSet s = 0; s <= all; ++s)
        if (contains(s, j) && !contains(s, i)) d[s] -= d[s ^ (1u << j)];
    }
    for (PlayerSet s = 0; s <= all; ++s)
      if (!contains(s, i)) sys.set(i, s, Rational(d[s]));
  }
  return sys;
}

PayoffTensor payoffs_from_advantage(const MultiAffineSystem& sys) {
  const int n = sys.n();
  const PlayerSet all = (1u << n) - 1;
  std::vector<std::vector<Rational>> value(static_cast<std::size_t>(n));
  Integer m(1);
  for (int i = 0; i < n; ++i) {
    auto& val = value[static_cast<std::size_t>(i)];
    val = sys.poly(i).coefficients();
    // Zeta transform: val[v] = sum over s within v of c_s = f_i at the profile v.
    for (int j = 0; j < n; ++j)
      for (PlayerSet v = 0; v <= all; ++v)
        if (contains(v, j)) val[v] += val[v ^ (1u << j)];
    for (PlayerSet v = 0; v <= all; ++v)
      if (!contains(v, i)) m = lcm(m, val[v].get_den());
  }
  PayoffTensor g = make_tensor(n);
  g.M = m;
  for (int i = 0; i < n; ++i)
    for (PlayerSet v = 0; v <= all; ++v) {
      if (contains(v, i)) continue;
      const Rational scaled = value[static_cast<std::size_t>(i)][v] * m;
      g.u[static_cast<std::size_t>(i)][v | (1u << i)] = scaled.get_num();
    }
  return g;
}

CoeffVector anchor_coeffs(int n) {
  if (n < 2) throw Error("anchor game needs n >= 2");
  CoeffVector c(n);
  for (int i = 0; i + 1 < n; ++i) {
    c.set(i, 0, Rational(-1));
    c.set(i, 1u << (i + 1), Rational(2));
  }
  c.set(n - 1, 0, Rational(1));
  c.set(n - 1, 1u, Rational(-2));
  return c;
}

CoeffVector shift_coeffs(const CoeffVector& c, const std::vector<Rational>& lambda) {
  const int n = c.n();
  if (static_cast<int>(lambda.size()) != n) throw Error("shift needs one entry per player");
  const PlayerSet all = (1u << n) - 1;
  CoeffVector out(n);
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> a = c.poly(i).coefficients();
    // x_j -> x_j + lambda_j, one variable at a time.
    for (int j = 0; j < n; ++j) {
      if (sgn(lambda[static_cast<std::size_t>(j)]) == 0) continue;
      for (PlayerSet s = 0; s <= all; ++s)
        if (contains(s, j)) a[s ^ (1u << j)] += lambda[static_cast<std::size_t>(j)] * a[s];
    }
    for (PlayerSet s = 0; s <= all; ++s)
      if (!contains(s, i)) out.set(i, s, a[s]);
  }
  return out;
}

CoeffVector perturb(const CoeffVector& c0, long denom_bound, const Rational& magnitude, std::uint64_t seed) {
  if (sgn(magnitude) <= 0) throw Error("perturbation magnitude must be positive");
  if (denom_bound < 2) throw Error("denominator bound must be at least 2");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick_den(1, denom_bound);
  CoeffVector c = c0;
  const int n = c0.n();
  for (int i = 0; i < n; ++i)
    for (PlayerSet s = 0; s < (1u << n); ++s) {
      if (contains(s, i)) continue;
      for (;;) {
        const long q = pick_den(rng);
        const Rational cap = magnitude * q;
        const Integer kmax_z = cap.get_num() / cap.get_den();
        if (kmax_z == 0) continue;
        const long kmax = kmax_z.fits_slong_p() ? kmax_z.get_si() : 1L << 40;
        long k = std::uniform_int_distribution<long>(1, kmax)(rng);
        if (rng() & 1u) k = -k;
        Rational delta(k, q);
        delta.canonicalize();
        const Rational value = c0.at(i, s) + delta;
        if (sgn(value) == 0) continue;
        c.set(i, s, value);
        break;
      }
    }
  return c;
}

namespace {

nlohmann::json players_json(PlayerSet s, int n) {
  nlohmann::json arr = nlohmann::json::array();
  for (int j = 0; j < n; ++j)
    if (contains(s, j)) arr.push_back(j + 1);
  return arr;
}

int read_n(const nlohmann::json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer()) throw Error("game JSON needs an integer \"n\"");
  const int n = j["n"].get<int>();
  if (n < 2 || n > kMaxPlayers) throw Error("player count out of range");
  return n;
}

int read_player(const nlohmann::json& v, int n) {
  if (!v.is_number_integer()) throw Error("player index must be an integer");
  const int i = v.get<int>();
  if (i < 1 || i > n) throw Error("player index out of range (players are 1-based)");
  return i - 1;
}

}  // namespace

nlohmann::json game_to_json(const CoeffVector& c) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (int i = 0; i < c.n(); ++i)
    for (PlayerSet s = 0; s < (1u << c.n()); ++s)
      if (!contains(s, i)) coeffs.push_back({{"i", i + 1}, {"s", players_json(s, c.n())}, {"v", rational_to_json(c.at(i, s))}});
  return {{"n", c.n()}, {"coeffs", coeffs}};
}

CoeffVector game_from_json(const nlohmann::json& j) {
  const int n = read_n(j);
  if (!j.contains("coeffs") || !j["coeffs"].is_array()) throw Error("game JSON needs a \"coeffs\" array");
  CoeffVector c(n);
  std::vector<bool> seen(static_cast<std::size_t>(n) << n, false);
  for (const auto& e : j["coeffs"]) {
    const int i = read_player(e.at("i"), n);
    PlayerSet s = 0;
    for (const auto& v : e.at("s")) {
      const int p = read_player(v, n);
      if (contains(s, p)) throw Error("repeated player in subset");
      s |= 1u << p;
    }
    const std::size_t key = (static_cast<std::size_t>(i) << n) | s;
    if (seen[key]) throw Error("duplicate coefficient entry");
    seen[key] = true;
    c.set(i, s, rational_from_json(e.at("v")));
  }
  return c;
}

nlohmann::json tensor_to_json(const PayoffTensor& g) {
  nlohmann::json u = nlohmann::json::array();
  for (int i = 0; i < g.n; ++i) {
    nlohmann::json cells = nlohmann::json::array();
    for (PlayerSet a = 0; a < (1u << g.n); ++a) {
      nlohmann::json bits = nlohmann::json::array();
      for (int j = 0; j < g.n; ++j) bits.push_back(contains(a, j) ? 1 : 0);
      cells.push_back({bits, format_integer(g.u[static_cast<std::size_t>(i)][a])});
    }
    u.push_back(cells);
  }
  return {{"n", g.n}, {"M", format_integer(g.M)}, {"u", u}};
}

PayoffTensor tensor_from_json(const nlohmann::json& j) {
  const int n = read_n(j);
  PayoffTensor g = make_tensor(n);
  if (j.contains("M")) g.M = j["M"].is_string() ? parse_integer(j["M"].get<std::string>()) : Integer(j["M"].get<long>());
  const auto& u = j.at("u");
  if (!u.is_array() || static_cast<int>(u.size()) != n) throw Error("tensor JSON needs one \"u\" block per player");
  for (int i = 0; i < n; ++i) {
    std::vector<bool> seen(std::size_t{1} << n, false);
    for (const auto& cell : u[static_cast<std::size_t>(i)]) {
      const auto& bits = cell.at(0);
      if (!bits.is_array() || static_cast<int>(bits.size()) != n) throw Error("profile must list one action per player");
      PlayerSet a = 0;
      for (int k = 0; k < n; ++k) {
        const int b = bits[static_cast<std::size_t>(k)].get<int>();
        if (b != 0 && b != 1) throw Error("actions are 0 or 1");
        if (b) a |= 1u << k;
      }
      if (seen[a]) throw Error("duplicate payoff cell");
      seen[a] = true;
      const auto& v = cell.at(1);
      g.u[static_cast<std::size_t>(i)][a] = v.is_string() ? parse_integer(v.get<std::string>()) : Integer(v.get<long>());
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) throw Error("tensor must define every pure profile");
  }
  return g;
}

}  // namespace dnash
