#include "dnash/unipoly.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace dnash {

// ---------------------------------------------------------------------------
// UniPoly

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly::UniPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

UniPoly UniPoly::constant(const Rational& c) { return UniPoly(std::vector<Rational>{c}); }

UniPoly UniPoly::monomial(const Rational& c, std::size_t k) {
  std::vector<Rational> v(k + 1);
  v[k] = c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::linear_factor(const Rational& root) {
  return UniPoly(std::vector<Rational>{-root, Rational(1)});
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UniPoly::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

const Rational& UniPoly::leading() const {
  if (coeffs_.empty()) throw Error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rational UniPoly::eval(const Rational& t) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

int UniPoly::sign_at(const Rational& t) const { return sgn(eval(t)); }

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::taylor_shift(const Rational& shift) const {
  // Horner in the ring: ((c_d)(t+s) + c_{d-1})(t+s) + ...
  std::vector<Rational> c = coeffs_;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k > i; --k) c[k - 1] += shift * c[k];
  return UniPoly(std::move(c));
}

UniPoly UniPoly::primitive() const { return to_int_primitive().to_unipoly(); }

IntPoly UniPoly::to_int_primitive() const {
  if (coeffs_.empty()) return {};
  Integer den(1);
  for (const auto& c : coeffs_) den = lcm(den, c.get_den());
  std::vector<Integer> z;
  z.reserve(coeffs_.size());
  for (const auto& c : coeffs_) z.push_back(c.get_num() * (den / c.get_den()));
  IntPoly p = IntPoly(std::move(z)).primitive_part();
  if (sgn(p.leading()) < 0) {
    std::vector<Integer> neg = p.coefficients();
    for (auto& v : neg) v = -v;
    return IntPoly(std::move(neg));
  }
  return p;
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rational& s) {
  if (s == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= s;
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UniPoly(std::move(r));
}

PolyDivision divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  if (a.degree() < b.degree()) return {UniPoly{}, a};
  std::vector<Rational> rem = a.coefficients();
  const auto& bc = b.coefficients();
  const int db = b.degree();
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational inv_lc = 1 / b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational q = rem[static_cast<std::size_t>(k)] * inv_lc;
    if (q == 0) continue;
    quo[static_cast<std::size_t>(k - db)] = q;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= q * bc[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

bool divides(const UniPoly& d, const UniPoly& a) { return divmod(a, d).remainder.is_zero(); }

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  // Primitive remainder sequence over Z.
  IntPoly x = a.to_int_primitive();
  IntPoly y = b.to_int_primitive();
  if (x.is_zero()) return y.to_unipoly();
  if (y.is_zero()) return x.to_unipoly();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.is_zero() ? IntPoly{} : r.primitive_part();
  }
  return x.to_unipoly().primitive();
}

namespace {

// Subresultant algorithm for Res(A, B) over Z (Cohen, GTM 138, Alg. 3.3.7).
Integer int_resultant(IntPoly A, IntPoly B) {
  if (A.is_zero() || B.is_zero()) return 0;
  const Integer a = A.content();
  const Integer b = B.content();
  A = exact_quotient(A, a);
  B = exact_quotient(B, b);
  Integer t = pow(a, static_cast<unsigned long>(B.degree())) * pow(b, static_cast<unsigned long>(A.degree()));
  Integer g(1), h(1);
  int s = 1;
  if (A.degree() < B.degree()) {
    std::swap(A, B);
    if ((A.degree() % 2 == 1) && (B.degree() % 2 == 1)) s = -s;
  }
  while (B.degree() > 0) {
    const int delta = A.degree() - B.degree();
    if ((A.degree() % 2 == 1) && (B.degree() % 2 == 1)) s = -s;
    IntPoly R = pseudo_remainder(A, B);
    A = std::move(B);
    if (R.is_zero()) return 0;
    B = exact_quotient(R, g * pow(h, static_cast<unsigned long>(delta)));
    g = A.leading();
    // h <- h^(1 - delta) * g^delta
    if (delta == 0) {
      // h unchanged
    } else {
      Integer num = pow(g, static_cast<unsigned long>(delta));
      Integer den = pow(h, static_cast<unsigned long>(delta - 1));
      h = num / den;
    }
  }
  // B is a nonzero constant here.
  const int da = A.degree();
  Integer lb = B.leading();
  Integer hh;
  if (da == 0) {
    hh = h;  // h^(1) * lb^0
  } else {
    Integer num = pow(lb, static_cast<unsigned long>(da));
    Integer den = pow(h, static_cast<unsigned long>(da - 1));
    hh = num / den;
  }
  return s * t * hh;
}

}  // namespace

Rational resultant(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() && b.is_zero()) throw Error("undefined resultant");
  if (a.is_zero() || b.is_zero()) return 0;
  if (a.degree() == 0 && b.degree() == 0) return 1;
  if (a.degree() == 0) return pow(a.leading(), static_cast<unsigned long>(b.degree()));
  if (b.degree() == 0) return pow(b.leading(), static_cast<unsigned long>(a.degree()));
  // a = ca * A with A primitive integer, likewise b.
  IntPoly A = a.to_int_primitive();
  IntPoly B = b.to_int_primitive();
  const Rational ca = a.leading() / Rational(A.leading());
  const Rational cb = b.leading() / Rational(B.leading());
  Rational r(int_resultant(A, B));
  r *= pow(ca, static_cast<unsigned long>(b.degree()));
  r *= pow(cb, static_cast<unsigned long>(a.degree()));
  return r;
}

UniPoly squarefree_part(const UniPoly& a) {
  if (a.is_zero()) throw Error("squarefree part of the zero polynomial");
  if (a.degree() == 0) return UniPoly{1};
  UniPoly g = gcd(a, a.derivative());
  return divmod(a, g).quotient.primitive();
}

int strip_root(UniPoly& a, const Rational& root) {
  int m = 0;
  if (a.is_zero()) return 0;
  const UniPoly lin = UniPoly::linear_factor(root);
  while (a.degree() >= 1 && a.eval(root) == 0) {
    a = divmod(a, lin).quotient;
    ++m;
  }
  return m;
}

std::string to_string(const UniPoly& p, char var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational& c = p.coefficients()[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = (mag == 1);
    if (k == 0 || !unit) {
      os << format_rational(mag);
      if (k > 0) os << "*";
    }
    if (k >= 1) os << var;
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer IntPoly::content() const {
  Integer g(0);
  for (const auto& c : coeffs_) {
    g = gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (coeffs_.empty()) return {};
  return exact_quotient(*this, content());
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Integer> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  return IntPoly(std::move(d));
}

UniPoly IntPoly::to_unipoly() const {
  std::vector<Rational> q(coeffs_.begin(), coeffs_.end());
  return UniPoly(std::move(q));
}

int IntPoly::sign_at(const Rational& t) const {
  if (coeffs_.empty()) return 0;
  const Integer& p = t.get_num();
  const Integer& q = t.get_den();
  // sum c_k p^k q^(d-k), same sign as q^d * P(p/q) since q > 0.
  Integer acc = coeffs_.back();
  Integer qpow(1);
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
    qpow *= q;
    acc *= p;
    acc += coeffs_[k] * qpow;
  }
  return sgn(acc);
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw Error("pseudo-remainder by zero");
  if (a.degree() < b.degree()) return a;
  std::vector<Integer> r = a.coefficients();
  const auto& bc = b.coefficients();
  const int db = b.degree();
  const Integer& lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    const Integer lead = r[static_cast<std::size_t>(k)];
    // r <- lb * r - lead * x^(k-db) * b
    for (auto& v : r) v *= lb;
    if (lead != 0)
      for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= lead * bc[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return IntPoly(std::move(r));
}

IntPoly exact_quotient(const IntPoly& a, const Integer& d) {
  if (d == 1) return a;
  std::vector<Integer> r = a.coefficients();
  for (auto& v : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
  return IntPoly(std::move(r));
}

}  // namespace dnash
