#include "dnash/groebner.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "dnash/kernels.hpp"

namespace dnash {

namespace {

// Exponents are packed one byte per variable, variable v in byte v, each below 128.
constexpr std::uint64_t kHigh = 0x8080808080808080ull;

std::uint32_t total_degree(std::uint64_t m) { return static_cast<std::uint32_t>((m * 0x0101010101010101ull) >> 56); }

bool divides(std::uint64_t a, std::uint64_t b) { return (((b | kHigh) - a) & kHigh) == kHigh; }

std::uint64_t mono_mul(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  if (s & kHigh) throw std::overflow_error("groebner: exponent overflow");
  return s;
}

std::uint64_t mono_lcm(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  for (int k = 0; k < 8; ++k) {
    const std::uint64_t sh = 8u * static_cast<unsigned>(k);
    r |= std::max((a >> sh) & 0xffu, (b >> sh) & 0xffu) << sh;
  }
  return r;
}

// Grevlex: higher total degree first, then smaller exponent in the last variable.
bool greater(std::uint32_t da, std::uint64_t a, std::uint32_t db, std::uint64_t b) {
  return da != db ? da > db : a < b;
}

}  // namespace

namespace {

struct Engine {
  struct Term {
    std::uint64_t mono;
    std::uint32_t deg;
    std::uint32_t c;
  };
  using Poly = std::vector<Term>;

  PrimeField f;
  std::vector<Poly> polys;
  std::vector<bool> active;

  struct Pair {
    std::size_t i, j;
    std::uint64_t lcm;
    std::uint32_t deg;
  };
  std::vector<Pair> pairs;

  static bool term_greater(const Term& a, const Term& b) { return greater(a.deg, a.mono, b.deg, b.mono); }

  // a - s * m * b (b without its first `skip` terms), all sorted descending.
  Poly sub_mul(const Poly& a, std::size_t a_from, std::uint32_t s, std::uint64_t m, const Poly& b,
               std::size_t b_from) const {
    Poly out;
    out.reserve(a.size() - a_from + b.size() - b_from);
    const std::uint32_t dm = total_degree(m);
    std::size_t i = a_from, j = b_from;
    while (i < a.size() || j < b.size()) {
      if (j == b.size()) {
        out.push_back(a[i++]);
        continue;
      }
      const Term bt{mono_mul(b[j].mono, m), b[j].deg + dm, f.neg(f.mul(s, b[j].c))};
      if (i == a.size() || term_greater(bt, a[i])) {
        out.push_back(bt);
        ++j;
      } else if (term_greater(a[i], bt)) {
        out.push_back(a[i++]);
      } else {
        const std::uint32_t c = f.add(a[i].c, bt.c);
        if (c) out.push_back({a[i].mono, a[i].deg, c});
        ++i;
        ++j;
      }
    }
    return out;
  }

  const Poly* divisor_for(std::uint64_t mono) const {
    for (std::size_t k = 0; k < polys.size(); ++k)
      if (active[k] && divides(polys[k].front().mono, mono)) return &polys[k];
    return nullptr;
  }

  // Full reduction against the active basis; result made monic.
  Poly reduce(Poly p) const {
    Poly done;
    std::size_t pos = 0;
    while (pos < p.size()) {
      const Term lead = p[pos];
      const Poly* g = divisor_for(lead.mono);
      if (!g) {
        done.push_back(lead);
        ++pos;
        continue;
      }
      const std::uint64_t m = lead.mono - g->front().mono;
      p = sub_mul(p, pos + 1, lead.c, m, *g, 1);
      pos = 0;
    }
    if (!done.empty()) {
      const std::uint32_t inv = f.inv(done.front().c);
      for (auto& t : done) t.c = f.mul(t.c, inv);
    }
    return done;
  }

  Poly spoly(const Pair& pr) const {
    const Poly& a = polys[pr.i];
    const Poly& b = polys[pr.j];
    const std::uint64_t ma = pr.lcm - a.front().mono;
    const std::uint64_t mb = pr.lcm - b.front().mono;
    Poly left;
    left.reserve(a.size());
    const std::uint32_t dma = total_degree(ma);
    for (std::size_t k = 1; k < a.size(); ++k) left.push_back({mono_mul(a[k].mono, ma), a[k].deg + dma, a[k].c});
    return sub_mul(left, 0, 1, mb, b, 1);
  }

  Pair make_pair(std::size_t i, std::size_t j) const {
    const std::uint64_t l = mono_lcm(polys[i].front().mono, polys[j].front().mono);
    return {i, j, l, total_degree(l)};
  }

  // Gebauer-Moeller update for a new basis element h.
  void update(Poly h) {
    const std::size_t r = polys.size();
    polys.push_back(std::move(h));
    active.push_back(true);
    const std::uint64_t lh = polys[r].front().mono;

    std::vector<Pair> c;
    for (std::size_t i = 0; i < r; ++i)
      if (active[i]) c.push_back(make_pair(i, r));
    std::vector<Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Pair& p1 = c[k];
      bool keep = mono_lcm(polys[p1.i].front().mono, lh) == polys[p1.i].front().mono + lh;
      if (!keep) {
        keep = true;
        for (std::size_t q = k + 1; q < c.size() && keep; ++q)
          if (divides(c[q].lcm, p1.lcm)) keep = false;
        for (std::size_t q = 0; q < d.size() && keep; ++q)
          if (divides(d[q].lcm, p1.lcm)) keep = false;
      }
      if (keep) d.push_back(p1);
    }
    std::vector<Pair> e;
    for (const Pair& p : d) {
      const std::uint64_t li = polys[p.i].front().mono;
      if (mono_lcm(li, lh) != li + lh) e.push_back(p);
    }
    std::vector<Pair> kept;
    for (const Pair& p : pairs) {
      const std::uint64_t l1 = mono_lcm(polys[p.i].front().mono, lh);
      const std::uint64_t l2 = mono_lcm(polys[p.j].front().mono, lh);
      if (divides(lh, p.lcm) && l1 != p.lcm && l2 != p.lcm) continue;
      kept.push_back(p);
    }
    kept.insert(kept.end(), e.begin(), e.end());
    pairs = std::move(kept);
    for (std::size_t i = 0; i < r; ++i)
      if (active[i] && divides(lh, polys[i].front().mono)) active[i] = false;
  }

  bool run(std::vector<Poly> input) {
    for (auto& p : input) {
      Poly h = reduce(std::move(p));
      if (h.empty()) continue;
      update(std::move(h));
      if (polys.back().front().mono == 0) return true;
    }
    while (!pairs.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs.size(); ++k)
        if (greater(pairs[best].deg, pairs[best].lcm, pairs[k].deg, pairs[k].lcm)) best = k;
      const Pair pr = pairs[best];
      pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
      Poly h = reduce(spoly(pr));
      if (h.empty()) continue;
      update(std::move(h));
      if (polys.back().front().mono == 0) return true;
    }
    return true;
  }

  // Minimal reduced basis from the active elements.
  std::vector<Poly> reduced_basis() {
    std::vector<Poly> out;
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < polys.size(); ++k)
      if (active[k]) idx.push_back(k);
    // Tail reduction keeping the leading term fixed.
    for (std::size_t k : idx) {
      Poly g;
      g.push_back(polys[k].front());
      Poly rest(polys[k].begin() + 1, polys[k].end());
      active[k] = false;
      std::size_t pos = 0;
      while (pos < rest.size()) {
        const Term lead = rest[pos];
        const Poly* d = divisor_for(lead.mono);
        if (!d) {
          g.push_back(lead);
          ++pos;
          continue;
        }
        rest = sub_mul(rest, pos + 1, lead.c, lead.mono - d->front().mono, *d, 1);
        pos = 0;
      }
      active[k] = true;
      polys[k] = g;
      out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(),
              [](const Poly& a, const Poly& b) { return term_greater(b.front(), a.front()); });
    return out;
  }
};

}  // namespace

std::optional<ModularQuotient> ModularQuotient::compute(const std::vector<FpPoly>& input, unsigned vars,
                                                        std::size_t max_dimension) {
  if (vars > 8) throw std::invalid_argument("groebner: at most 8 variables");
  ModularQuotient q;
  if (input.empty()) return std::nullopt;
  q.p_ = input.front().ring().p;
  q.vars_ = vars;
  Engine eng;
  eng.f = PrimeField{q.p_};
  std::vector<Engine::Poly> polys;
  for (const auto& p : input) {
    Engine::Poly e;
    for (const auto& [m, c] : p.terms()) {
      std::uint64_t packed = 0;
      for (unsigned v = 0; v < vars; ++v) {
        const int ex = exponent_of(m, static_cast<int>(v));
        if (ex >= 128) throw std::overflow_error("groebner: exponent overflow");
        packed |= static_cast<std::uint64_t>(ex) << (8 * v);
      }
      e.push_back({packed, total_degree(packed), c});
    }
    std::sort(e.begin(), e.end(), Engine::term_greater);
    if (!e.empty()) polys.push_back(std::move(e));
  }
  // Smaller inputs first keeps the early reductions cheap.
  std::stable_sort(polys.begin(), polys.end(), [](const Engine::Poly& a, const Engine::Poly& b) {
    return greater(b.front().deg, b.front().mono, a.front().deg, a.front().mono);
  });
  eng.run(std::move(polys));
  auto basis = eng.reduced_basis();
  for (auto& g : basis) {
    Poly h;
    for (const auto& t : g) h.push_back({t.mono, t.deg, t.c});
    q.basis_.push_back(std::move(h));
  }
  const bool unit = !q.basis_.empty() && q.basis_.front().back().mono == 0 && q.basis_.size() == 1 &&
                    q.basis_.front().size() == 1;
  if (unit) return q;

  // Zero-dimensional iff every variable has a pure power among the leading terms.
  for (unsigned v = 0; v < vars; ++v) {
    bool pure = false;
    for (const auto& g : q.basis_) {
      const std::uint64_t lt = g.front().mono;
      if (lt != 0 && (lt & ~(0xffull << (8 * v))) == 0) pure = true;
    }
    if (!pure) return std::nullopt;
  }

  auto reducible = [&](std::uint64_t m) {
    for (const auto& g : q.basis_)
      if (divides(g.front().mono, m)) return true;
    return false;
  };
  std::vector<std::uint64_t> frontier{0};
  std::unordered_set<std::uint64_t> seen{0};
  while (!frontier.empty()) {
    const std::uint64_t m = frontier.back();
    frontier.pop_back();
    q.standard_.push_back(m);
    if (q.standard_.size() > max_dimension) return std::nullopt;
    for (unsigned v = 0; v < vars; ++v) {
      const std::uint64_t n = m + (1ull << (8 * v));
      if (!reducible(n) && seen.insert(n).second) frontier.push_back(n);
    }
  }
  std::sort(q.standard_.begin(), q.standard_.end(), [](std::uint64_t a, std::uint64_t b) {
    return greater(total_degree(b), b, total_degree(a), a);
  });

  q.mult_.assign(vars, {});
  for (unsigned v = 0; v < vars; ++v) {
    q.mult_[v].reserve(q.standard_.size());
    for (std::uint64_t m : q.standard_) q.mult_[v].push_back(q.normal_form_vector(m + (1ull << (8 * v))));
  }
  return q;
}

std::vector<std::uint32_t> ModularQuotient::normal_form_vector(std::uint64_t mono) const {
  const PrimeField f{p_};
  std::vector<std::uint32_t> out(standard_.size(), 0);
  static thread_local std::unordered_map<std::uint64_t, std::size_t> index;
  index.clear();
  for (std::size_t k = 0; k < standard_.size(); ++k) index.emplace(standard_[k], k);

  Poly p{{mono, total_degree(mono), 1}};
  std::size_t pos = 0;
  while (pos < p.size()) {
    const Term lead = p[pos];
    const Poly* g = nullptr;
    for (const auto& b : basis_)
      if (divides(b.front().mono, lead.mono)) {
        g = &b;
        break;
      }
    if (!g) {
      out[index.at(lead.mono)] = f.add(out[index.at(lead.mono)], lead.c);
      ++pos;
      continue;
    }
    // p <- p - lead.c * (lead.mono / lt) * g, from position pos on.
    const std::uint64_t m = lead.mono - g->front().mono;
    const std::uint32_t dm = total_degree(m);
    Poly next;
    std::size_t i = pos + 1, j = 1;
    while (i < p.size() || j < g->size()) {
      if (j == g->size()) {
        next.push_back(p[i++]);
        continue;
      }
      const Term bt{mono_mul((*g)[j].mono, m), (*g)[j].deg + dm, f.neg(f.mul(lead.c, (*g)[j].c))};
      if (i == p.size() || greater(bt.deg, bt.mono, p[i].deg, p[i].mono)) {
        next.push_back(bt);
        ++j;
      } else if (greater(p[i].deg, p[i].mono, bt.deg, bt.mono)) {
        next.push_back(p[i++]);
      } else {
        const std::uint32_t c = f.add(p[i].c, bt.c);
        if (c) next.push_back({p[i].mono, p[i].deg, c});
        ++i;
        ++j;
      }
    }
    p = std::move(next);
    pos = 0;
  }
  return out;
}

namespace {

// Incremental row echelon form over F_p that remembers how each row was combined.
class Echelon {
 public:
  Echelon(std::uint32_t p, std::size_t width, std::size_t combo_width)
      : f_{p}, width_(width), combo_width_(combo_width) {}

  // Reduces (vec | combo) against the stored rows. Returns true when vec became zero.
  bool reduce(std::vector<std::uint32_t>& vec, std::vector<std::uint32_t>& combo) const {
    const auto& k = simd::kernels();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::uint32_t c = vec[pivots_[r]];
      if (!c) continue;
      const std::uint32_t s = f_.neg(c);
      k.axpy(vec.data(), rows_[r].data(), width_, s, f_.p);
      k.axpy(combo.data(), combos_[r].data(), combo_width_, s, f_.p);
    }
    return std::all_of(vec.begin(), vec.end(), [](std::uint32_t x) { return x == 0; });
  }

  void add(std::vector<std::uint32_t> vec, std::vector<std::uint32_t> combo) {
    std::size_t piv = 0;
    while (vec[piv] == 0) ++piv;
    const std::uint32_t inv = f_.inv(vec[piv]);
    const auto& k = simd::kernels();
    k.scale(vec.data(), width_, inv, f_.p);
    k.scale(combo.data(), combo_width_, inv, f_.p);
    rows_.push_back(std::move(vec));
    combos_.push_back(std::move(combo));
    pivots_.push_back(piv);
  }

 private:
  PrimeField f_;
  std::size_t width_, combo_width_;
  std::vector<std::vector<std::uint32_t>> rows_, combos_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

std::vector<std::vector<std::uint32_t>> ModularQuotient::krylov(int v, std::size_t count) const {
  const std::size_t d = standard_.size();
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur(d, 0);
  cur[0] = 1;  // standard_[0] is the monomial 1
  const auto& k = simd::kernels();
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(cur);
    std::vector<std::uint32_t> next(d, 0);
    for (std::size_t j = 0; j < d; ++j)
      if (cur[j]) k.axpy(next.data(), mult_[static_cast<std::size_t>(v)][j].data(), d, cur[j], p_);
    cur = std::move(next);
  }
  return out;
}

std::vector<std::uint32_t> ModularQuotient::minimal_polynomial(int v) const {
  const std::size_t d = standard_.size();
  if (d == 0) return {1};
  auto kr = krylov(v, d + 1);
  Echelon ech(p_, d, d + 1);
  for (std::size_t i = 0; i <= d; ++i) {
    std::vector<std::uint32_t> combo(d + 1, 0);
    combo[i] = 1;
    if (ech.reduce(kr[i], combo)) {
      combo.resize(i + 1);
      return combo;  // sum combo[j] x^j = 0 with combo[i] = 1
    }
    ech.add(std::move(kr[i]), std::move(combo));
  }
  throw std::logic_error("groebner: no dependency among Krylov vectors");
}

std::optional<std::vector<std::vector<std::uint32_t>>> ModularQuotient::parametrisation(int v) const {
  const std::size_t d = standard_.size();
  if (d == 0) return std::nullopt;
  auto kr = krylov(v, d);
  Echelon ech(p_, d, d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::uint32_t> combo(d, 0);
    combo[i] = 1;
    if (ech.reduce(kr[i], combo)) return std::nullopt;
    ech.add(std::move(kr[i]), std::move(combo));
  }
  const PrimeField f{p_};
  std::vector<std::vector<std::uint32_t>> out(vars_);
  for (unsigned w = 0; w < vars_; ++w) {
    auto vec = normal_form_vector(1ull << (8 * w));
    std::vector<std::uint32_t> combo(d, 0);
    if (!ech.reduce(vec, combo)) return std::nullopt;
    // vec - sum combo_j K_j = 0 after reduction, so x_w = -sum combo_j t^j.
    for (auto& c : combo) c = f.neg(c);
    while (!combo.empty() && combo.back() == 0) combo.pop_back();
    out[w] = std::move(combo);
  }
  return out;
}

}  // namespace dnash
