#include "dnash/roots.hpp"

#include <utility>

namespace dnash {

Interval::Interval(Rational lo, Rational hi) : low(std::move(lo)), high(std::move(hi)) {
  if (high < low) throw Error("interval with low > high");
}

SturmSequence::SturmSequence(const UniPoly& p) {
  if (p.is_zero()) throw Error("Sturm sequence of the zero polynomial");
  IntPoly s0 = p.to_int_primitive();
  chain_.push_back(s0);
  IntPoly s1 = s0.derivative();
  if (s1.is_zero()) return;
  chain_.push_back(s1.primitive_part());
  for (;;) {
    const IntPoly& a = chain_[chain_.size() - 2];
    const IntPoly& b = chain_.back();
    if (b.degree() == 0) break;
    IntPoly r = pseudo_remainder(a, b);
    if (r.is_zero()) break;
    // prem = lc(b)^(delta+1) * rem; the chain needs -rem up to a positive factor.
    const int exponent = a.degree() - b.degree() + 1;
    const bool flip_lc = sgn(b.leading()) < 0 && (exponent % 2 == 1);
    std::vector<Integer> c = r.primitive_part().coefficients();
    if (!flip_lc)
      for (auto& v : c) v = -v;
    chain_.emplace_back(std::move(c));
  }
}

int SturmSequence::variations_at(const Rational& t) const {
  int count = 0;
  int last = 0;
  for (const auto& s : chain_) {
    const int v = s.sign_at(t);
    if (v == 0) continue;
    if (last != 0 && v != last) ++count;
    last = v;
  }
  return count;
}

int SturmSequence::count_roots(const Rational& lo, const Rational& hi) const {
  return variations_at(lo) - variations_at(hi);
}

Rational cauchy_bound(const UniPoly& p) {
  if (p.degree() < 1) return Rational(1);
  const Rational lc = abs(p.leading());
  Rational m(0);
  for (int k = 0; k < p.degree(); ++k) {
    Rational r = abs(p.coefficients()[static_cast<std::size_t>(k)]) / lc;
    if (r > m) m = r;
  }
  return m + 1;
}

namespace {

bool is_squarefree(const UniPoly& p) { return gcd(p, p.derivative()).degree() <= 0; }

// Moves a range endpoint that is a root outward so it no longer is one, without
// letting any new root in.
Rational push_off_root(const SturmSequence& sq, const Rational& endpoint, int direction) {
  Rational step(1);
  for (;;) {
    Rational candidate = endpoint + direction * step;
    if (sq.base().sign_at(candidate) != 0) {
      const int extra = direction < 0 ? sq.count_roots(candidate, endpoint) - 1
                                      : sq.count_roots(endpoint, candidate);
      if (extra == 0) return candidate;
    }
    step /= 2;
  }
}

}  // namespace

std::vector<Interval> sturm_isolate(const UniPoly& p, const Interval& range) {
  if (p.is_zero()) throw Error("root isolation of the zero polynomial");
  if (!is_squarefree(p)) throw Error("requires squarefree input");
  std::vector<Interval> out;
  if (p.degree() < 1) return out;

  const SturmSequence sq(p);
  const IntPoly& base = sq.base();
  Rational lo = range.low;
  Rational hi = range.high;
  if (base.sign_at(lo) == 0) lo = push_off_root(sq, lo, -1);
  if (base.sign_at(hi) == 0) hi = push_off_root(sq, hi, +1);

  struct Pending {
    Rational l, r;
    int vl, vr;
  };
  std::vector<Pending> stack;
  stack.push_back({lo, hi, sq.variations_at(lo), sq.variations_at(hi)});
  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();
    const int count = cur.vl - cur.vr;
    if (count <= 0) continue;
    if (count == 1) {
      out.emplace_back(cur.l, cur.r);
      continue;
    }
    Rational mid = (cur.l + cur.r) / 2;
    for (long k = 3; base.sign_at(mid) == 0; ++k) mid = cur.l + (cur.r - cur.l) * (Rational(1, 2) + pow2(-k));
    const int vm = sq.variations_at(mid);
    // Push the right half first so results come out sorted.
    stack.push_back({mid, cur.r, vm, cur.vr});
    stack.push_back({cur.l, mid, cur.vl, vm});
  }
  // Neighbours produced by bisection share an endpoint; pull the left one inward.
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    if (out[i].high != out[i + 1].low) continue;
    Rational step = out[i].width() / 2;
    for (;;) {
      Rational candidate = out[i].high - step;
      if (base.sign_at(candidate) != 0 && sq.count_roots(candidate, out[i].high) == 0) {
        out[i].high = candidate;
        break;
      }
      step /= 2;
    }
  }
  return out;
}

Interval refine_root(const IntPoly& p, const Interval& iv, const Rational& width) {
  if (iv.is_point()) {
    if (p.sign_at(iv.low) != 0) throw Error("refine_root: point interval is not a root");
    return iv;
  }
  Rational lo = iv.low;
  Rational hi = iv.high;
  const int s_lo = p.sign_at(lo);
  const int s_hi = p.sign_at(hi);
  if (s_lo == 0) return Interval::point(lo);
  if (s_hi == 0) return Interval::point(hi);
  if (s_lo == s_hi) throw Error("refine_root: interval does not bracket a root");
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    const int s = p.sign_at(mid);
    if (s == 0) return Interval::point(mid);
    if (s == s_lo)
      lo = std::move(mid);
    else
      hi = std::move(mid);
  }
  return {lo, hi};
}

Interval refine_root(const UniPoly& p, const Interval& iv, const Rational& width) {
  return refine_root(p.to_int_primitive(), iv, width);
}

}  // namespace dnash
