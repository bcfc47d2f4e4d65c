#include "dnash/mpoly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "dnash/modp.hpp"

namespace dnash {

PrimeField::Elem PrimeField::pow(Elem a, std::uint64_t e) const {
  Elem r = 1 % p;
  while (e > 0) {
    if (e & 1u) r = mul(r, a);
    a = mul(a, a);
    e >>= 1u;
  }
  return r;
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a == 0) throw Error("inverse of zero modulo p");
  return pow(a, p - 2);
}

namespace {

template <class Ring>
void normalize_terms(const Ring& ring, std::vector<typename MPoly<Ring>::Term>& t) {
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i + 1;
    auto acc = std::move(t[i].second);
    while (j < t.size() && t[j].first == t[i].first) {
      acc = ring.add(acc, t[j].second);
      ++j;
    }
    if (!Ring::is_zero(acc)) {
      t[out].first = t[i].first;
      t[out].second = std::move(acc);
      ++out;
    }
    i = j;
  }
  t.resize(out);
}

}  // namespace

template <class Ring>
MPoly<Ring>::MPoly(Ring ring, std::vector<Term> terms) : ring_(ring), terms_(std::move(terms)) {
  normalize_terms(ring_, terms_);
}

template <class Ring>
MPoly<Ring> MPoly<Ring>::constant(Ring ring, const Elem& c) {
  MPoly r(ring);
  if (!Ring::is_zero(c)) r.terms_.emplace_back(Monomial(0), c);
  return r;
}

template <class Ring>
MPoly<Ring> MPoly<Ring>::variable(Ring ring, int v) {
  MPoly r(ring);
  r.terms_.emplace_back(unit_monomial(v), ring.from_long(1));
  return r;
}

template <class Ring>
typename MPoly<Ring>::Elem MPoly<Ring>::constant_term() const {
  if (!terms_.empty() && terms_.back().first == 0) return terms_.back().second;
  return ring_.from_long(0);
}

template <class Ring>
int MPoly<Ring>::degree(int v) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, exponent_of(m, v));
  return d;
}

template <class Ring>
unsigned MPoly<Ring>::variables() const {
  unsigned mask = 0;
  for (const auto& [m, c] : terms_)
    for (int v = 0; v < kMaxVars; ++v)
      if (exponent_of(m, v) != 0) mask |= 1u << v;
  return mask;
}

template <class Ring>
std::vector<MPoly<Ring>> MPoly<Ring>::coefficients_in(int v) const {
  std::vector<MPoly> out(static_cast<std::size_t>(std::max(degree(v), 0)) + 1, MPoly(ring_));
  for (const auto& [m, c] : terms_) {
    const int e = exponent_of(m, v);
    out[static_cast<std::size_t>(e)].terms_.emplace_back(m - unit_monomial(v, static_cast<unsigned>(e)), c);
  }
  return out;
}

template <class Ring>
MPoly<Ring> MPoly<Ring>::from_coefficients_in(int v, const std::vector<MPoly>& coeffs) {
  MPoly r(coeffs.empty() ? Ring{} : coeffs.front().ring_);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& [m, c] : coeffs[k].terms_)
      r.terms_.emplace_back(m + unit_monomial(v, static_cast<unsigned>(k)), c);
  normalize_terms(r.ring_, r.terms_);
  return r;
}

template <class Ring>
MPoly<Ring> MPoly<Ring>::evaluate(int v, const Elem& value) const {
  const int d = degree(v);
  if (d <= 0) return *this;
  std::vector<Elem> powers{ring_.from_long(1)};
  for (int k = 1; k <= d; ++k) powers.push_back(ring_.mul(powers.back(), value));
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    const int e = exponent_of(m, v);
    out.emplace_back(m - unit_monomial(v, static_cast<unsigned>(e)), ring_.mul(c, powers[static_cast<std::size_t>(e)]));
  }
  return MPoly(ring_, std::move(out));
}

template <class Ring>
MPoly<Ring> MPoly<Ring>::strip_monomial(unsigned mask) const {
  if (terms_.empty()) return *this;
  Monomial common = 0;
  for (int v = 0; v < kMaxVars; ++v) {
    if (!((mask >> v) & 1u)) continue;
    int lo = exponent_of(terms_.front().first, v);
    for (const auto& [m, c] : terms_) lo = std::min(lo, exponent_of(m, v));
    common += unit_monomial(v, static_cast<unsigned>(lo));
  }
  if (common == 0) return *this;
  MPoly r = *this;
  for (auto& [m, c] : r.terms_) m -= common;
  return r;
}

template <class Ring>
MPoly<Ring> MPoly<Ring>::rename(int v, int w) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    const unsigned e = static_cast<unsigned>(exponent_of(m, v));
    out.emplace_back(m - unit_monomial(v, e) + unit_monomial(w, e), c);
  }
  return MPoly(ring_, std::move(out));
}

template <class Ring>
MPoly<Ring> MPoly<Ring>::operator-() const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.second = ring_.neg(t.second);
  return r;
}

template <class Ring>
MPoly<Ring>& MPoly<Ring>::operator+=(const MPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) ring_ = o.ring_;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first > o.terms_[j].first)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].first > terms_[i].first) {
      out.push_back(o.terms_[j++]);
    } else {
      Elem s = ring_.add(terms_[i].second, o.terms_[j].second);
      if (!Ring::is_zero(s)) out.emplace_back(terms_[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

template <class Ring>
MPoly<Ring>& MPoly<Ring>::operator-=(const MPoly& o) {
  return *this += -o;
}

template <class Ring>
MPoly<Ring> MPoly<Ring>::scaled(const Elem& s) const {
  if (Ring::is_zero(s)) return MPoly(ring_);
  MPoly r = *this;
  for (auto& t : r.terms_) t.second = ring_.mul(t.second, s);
  if constexpr (!std::is_same_v<Ring, IntegerRing>) normalize_terms(r.ring_, r.terms_);
  return r;
}

template <class Ring>
MPoly<Ring> MPoly<Ring>::multiply(const MPoly& a, const MPoly& b) {
  if (a.terms_.empty() || b.terms_.empty()) return MPoly(a.terms_.empty() ? a.ring_ : b.ring_);
  const Ring& ring = a.ring_;
  std::vector<Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.emplace_back(ma + mb, ring.mul(ca, cb));
  return MPoly(ring, std::move(out));
}

template <class Ring>
MPoly<Ring> MPoly<Ring>::pow(unsigned e) const {
  MPoly result = constant(ring_, ring_.from_long(1));
  MPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

template class MPoly<IntegerRing>;
template class MPoly<PrimeField>;

Integer content(const ZPoly& a) {
  Integer g(0);
  for (const auto& [m, c] : a.terms()) {
    g = gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

ZPoly primitive(const ZPoly& a) {
  if (a.is_zero()) return a;
  Integer g = content(a);
  if (sgn(a.leading()) < 0) g = -g;
  if (g == 1) return a;
  std::vector<ZPoly::Term> t = a.terms();
  for (auto& [m, c] : t) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return ZPoly(a.ring(), std::move(t));
}

FpPoly monic(const FpPoly& a) {
  if (a.is_zero() || a.leading() == 1) return a;
  return a.scaled(a.ring().inv(a.leading()));
}

FpPoly reduce(const ZPoly& a, std::uint32_t p) {
  const PrimeField f{p};
  std::vector<FpPoly::Term> t;
  t.reserve(a.size());
  for (const auto& [m, c] : a.terms()) t.emplace_back(m, f.reduce(c));
  return FpPoly(f, std::move(t));
}

Integer norm1(const ZPoly& a) {
  Integer s(0);
  for (const auto& [m, c] : a.terms()) s += abs(c);
  return s;
}

namespace {

// Res(g, h) where g = A x + B is affine in x_v: sum_k h_k (-B)^k A^(d-k).
template <class Ring>
MPoly<Ring> affine_resultant(const MPoly<Ring>& g, const MPoly<Ring>& h, int v) {
  const auto gc = g.coefficients_in(v);
  const auto hc = h.coefficients_in(v);
  const MPoly<Ring> a = gc[1];
  const MPoly<Ring> minus_b = -gc[0];
  const std::size_t d = hc.size() - 1;
  std::vector<MPoly<Ring>> apow{MPoly<Ring>::constant(g.ring(), g.ring().from_long(1))};
  for (std::size_t k = 1; k <= d; ++k) apow.push_back(apow.back() * a);
  MPoly<Ring> sum(g.ring());
  MPoly<Ring> bpow = MPoly<Ring>::constant(g.ring(), g.ring().from_long(1));
  for (std::size_t k = 0; k <= d; ++k) {
    if (k > 0) bpow = bpow * minus_b;
    if (!hc[k].is_zero()) sum += hc[k] * bpow * apow[d - k];
  }
  return sum;
}

using Residues = std::vector<std::uint32_t>;

// Univariate resultant over F_p by the Euclidean remainder sequence.
std::uint32_t univariate_resultant(const PrimeField& f, const PrimePoly& a0, const PrimePoly& b0) {
  if (a0.is_zero() || b0.is_zero()) return 0;
  PrimePoly a = a0, b = b0;
  std::uint32_t res = 1;
  while (b.degree() > 0) {
    PrimePoly r = a.mod(b);
    if (r.is_zero()) return 0;
    const int da = a.degree(), db = b.degree(), dr = r.degree();
    res = f.mul(res, f.pow(b.leading(), static_cast<std::uint64_t>(da - dr)));
    if ((da % 2 == 1) && (db % 2 == 1)) res = f.neg(res);
    a = std::move(b);
    b = std::move(r);
  }
  return f.mul(res, f.pow(b.leading(), static_cast<std::uint64_t>(a.degree())));
}

PrimePoly to_prime_poly(const FpPoly& g, int v) {
  std::vector<std::uint32_t> c(static_cast<std::size_t>(std::max(g.degree(v), 0)) + 1, 0);
  for (const auto& [m, e] : g.terms()) c[static_cast<std::size_t>(exponent_of(m, v))] = e;
  return PrimePoly(g.ring().p, std::move(c));
}

// Lagrange data for interpolation at fixed points over F_p.
struct LagrangeBasis {
  std::vector<std::vector<std::uint32_t>> scaled;  // w_k * prod_{j != k}(y - a_j), ascending
};

LagrangeBasis lagrange_basis(const PrimeField& f, const std::vector<std::uint32_t>& pts) {
  const std::size_t m = pts.size();
  std::vector<std::uint32_t> master{1};
  for (std::uint32_t a : pts) {
    std::vector<std::uint32_t> next(master.size() + 1, 0);
    for (std::size_t i = 0; i < master.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], master[i]);
      next[i] = f.sub(next[i], f.mul(master[i], a));
    }
    master = std::move(next);
  }
  LagrangeBasis basis;
  basis.scaled.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    // Synthetic division of master by (y - a_k).
    std::vector<std::uint32_t> q(m, 0);
    std::uint32_t carry = 0;
    for (std::size_t i = m; i-- > 0;) {
      carry = f.add(master[i + 1], f.mul(carry, pts[k]));
      q[i] = carry;
    }
    std::uint32_t at = 0;
    for (std::size_t i = m; i-- > 0;) at = f.add(f.mul(at, pts[k]), q[i]);
    const std::uint32_t w = f.inv(at);
    for (auto& c : q) c = f.mul(c, w);
    basis.scaled[k] = std::move(q);
  }
  return basis;
}

FpPoly interpolate(const PrimeField& f, int y, const std::vector<std::uint32_t>& pts, const std::vector<FpPoly>& values) {
  const LagrangeBasis basis = lagrange_basis(f, pts);
  const std::size_t m = pts.size();
  struct Entry {
    Monomial mono;
    std::uint32_t k;
    std::uint32_t value;
  };
  std::vector<Entry> entries;
  for (std::size_t k = 0; k < values.size(); ++k)
    for (const auto& [mono, c] : values[k].terms()) entries.push_back({mono, static_cast<std::uint32_t>(k), c});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.mono > b.mono; });
  std::vector<FpPoly::Term> out;
  std::vector<std::uint64_t> acc(m);
  const std::uint64_t p = f.p;
  for (std::size_t i = 0; i < entries.size();) {
    std::fill(acc.begin(), acc.end(), 0);
    std::size_t j = i;
    for (; j < entries.size() && entries[j].mono == entries[i].mono; ++j) {
      const auto& row = basis.scaled[entries[j].k];
      const std::uint64_t v = entries[j].value;
      for (std::size_t c = 0; c < m; ++c) acc[c] = (acc[c] + v * row[c]) % p;
    }
    for (std::size_t c = 0; c < m; ++c)
      if (acc[c] != 0) out.emplace_back(entries[i].mono + unit_monomial(y, static_cast<unsigned>(c)), static_cast<std::uint32_t>(acc[c]));
    i = j;
  }
  return FpPoly(f, std::move(out));
}

}  // namespace

FpPoly resultant(const FpPoly& g, const FpPoly& h, int v) {
  const PrimeField& f = g.is_zero() ? h.ring() : g.ring();
  if (g.is_zero() && h.is_zero()) throw Error("undefined resultant");
  const int dg = g.degree(v), dh = h.degree(v);
  if (g.is_zero() || h.is_zero()) {
    // Res(0, h) vanishes unless h is constant in x_v.
    const FpPoly& other = g.is_zero() ? h : g;
    return other.degree(v) == 0 ? FpPoly::constant(f, 1) : FpPoly(f);
  }
  if (dg == 0) return g.pow(static_cast<unsigned>(dh));
  if (dh == 0) return h.pow(static_cast<unsigned>(dg));
  if (dg == 1) return affine_resultant(g, h, v);
  if (dh == 1) {
    FpPoly r = affine_resultant(h, g, v);
    return (dg * dh) % 2 ? -r : r;
  }
  const unsigned others = (g.variables() | h.variables()) & ~(1u << v);
  if (others == 0) return FpPoly::constant(f, univariate_resultant(f, to_prime_poly(g, v), to_prime_poly(h, v)));

  int y = -1;
  int best = 0;
  for (int w = 0; w < kMaxVars; ++w) {
    if (!((others >> w) & 1u)) continue;
    const int bound = dh * std::max(g.degree(w), 0) + dg * std::max(h.degree(w), 0);
    if (y < 0 || bound < best) {
      y = w;
      best = bound;
    }
  }
  std::vector<std::uint32_t> pts;
  std::vector<FpPoly> values;
  for (std::uint32_t a = 1; static_cast<int>(pts.size()) <= best; ++a) {
    if (a >= f.p) throw Error("resultant: modulus too small for interpolation");
    FpPoly ga = g.evaluate(y, a), ha = h.evaluate(y, a);
    if (ga.degree(v) != dg || ha.degree(v) != dh) continue;
    pts.push_back(a);
    values.push_back(resultant(ga, ha, v));
  }
  return interpolate(f, y, pts, values);
}

const std::vector<std::uint32_t>& reconstruction_primes(std::size_t count) {
  static std::mutex lock;
  static std::vector<std::uint32_t> primes;
  std::lock_guard<std::mutex> guard(lock);
  std::uint32_t next = primes.empty() ? (1u << 26) - 1 : primes.back() - 2;
  while (primes.size() < count) {
    if (is_prime(next)) primes.push_back(next);
    next -= 2;
  }
  return primes;
}

namespace {

// Incremental CRT over a sparse set of monomials.
class CrtAccumulator {
 public:
  void add(const FpPoly& image) {
    const std::uint32_t p = image.ring().p;
    const PrimeField f{p};
    const std::uint32_t minv = modulus_ == 0 ? 0 : f.inv(f.reduce(modulus_));
    std::vector<std::pair<Monomial, Integer>> merged;
    merged.reserve(values_.size() + image.size());
    std::size_t i = 0, j = 0;
    const auto& t = image.terms();
    auto lift = [&](Integer x, std::uint32_t r) {
      if (modulus_ == 0) return Integer(r);
      const std::uint32_t xr = f.reduce(x);
      const std::uint32_t k = f.mul(f.sub(r, xr), minv);
      return Integer(x + modulus_ * k);
    };
    while (i < values_.size() || j < t.size()) {
      if (j == t.size() || (i < values_.size() && values_[i].first > t[j].first)) {
        merged.emplace_back(values_[i].first, lift(values_[i].second, 0));
        ++i;
      } else if (i == values_.size() || t[j].first > values_[i].first) {
        merged.emplace_back(t[j].first, lift(Integer(0), t[j].second));
        ++j;
      } else {
        merged.emplace_back(t[j].first, lift(values_[i].second, t[j].second));
        ++i;
        ++j;
      }
    }
    values_ = std::move(merged);
    modulus_ = modulus_ == 0 ? Integer(p) : Integer(modulus_ * p);
  }
  const Integer& modulus() const { return modulus_; }
  ZPoly symmetric() const {
    const Integer half = modulus_ / 2;
    std::vector<ZPoly::Term> t;
    t.reserve(values_.size());
    for (const auto& [m, x] : values_) t.emplace_back(m, x > half ? Integer(x - modulus_) : x);
    return ZPoly(IntegerRing{}, std::move(t));
  }

 private:
  Integer modulus_{0};
  std::vector<std::pair<Monomial, Integer>> values_;
};

}  // namespace

ZPoly resultant(const ZPoly& g, const ZPoly& h, int v) {
  if (g.is_zero() && h.is_zero()) throw Error("undefined resultant");
  const int dg = g.degree(v), dh = h.degree(v);
  if (g.is_zero() || h.is_zero()) {
    const ZPoly& other = g.is_zero() ? h : g;
    return other.degree(v) == 0 ? ZPoly::constant(IntegerRing{}, Integer(1)) : ZPoly();
  }
  if (dg == 0) return g.pow(static_cast<unsigned>(dh));
  if (dh == 0) return h.pow(static_cast<unsigned>(dg));
  if (dg == 1) return affine_resultant(g, h, v);
  if (dh == 1) {
    ZPoly r = affine_resultant(h, g, v);
    return (dg * dh) % 2 ? -r : r;
  }
  const Integer bound = 2 * pow(norm1(g), static_cast<unsigned long>(dh)) * pow(norm1(h), static_cast<unsigned long>(dg));
  const auto glc = g.coefficients_in(v).back();
  const auto hlc = h.coefficients_in(v).back();
  CrtAccumulator crt;
  for (std::size_t k = 0; crt.modulus() <= bound; ++k) {
    const std::uint32_t p = reconstruction_primes(k + 1)[k];
    if (reduce(glc, p).is_zero() || reduce(hlc, p).is_zero()) continue;
    crt.add(resultant(reduce(g, p), reduce(h, p), v));
  }
  return crt.symmetric();
}

std::string to_string(const ZPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    const Integer a = abs(c);
    bool wrote = false;
    if (a != 1 || m == 0) {
      os << a.get_str();
      wrote = true;
    }
    for (int v = 0; v < kMaxVars; ++v) {
      const int e = exponent_of(m, v);
      if (e == 0) continue;
      if (wrote) os << "*";
      os << "x" << v;
      if (e > 1) os << "^" << e;
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace dnash
