#include "dnash/modp.hpp"

#include <algorithm>
#include <cmath>

#include "dnash/kernels.hpp"

namespace dnash {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint32_t> first_primes(std::size_t count) {
  std::vector<std::uint32_t> out;
  if (count == 0) return out;
  // p_k < k (ln k + ln ln k) for k >= 6.
  const double k = static_cast<double>(std::max<std::size_t>(count, 6));
  const auto limit = static_cast<std::size_t>(k * (std::log(k) + std::log(std::log(k)))) + 16;
  std::vector<bool> composite(limit + 1, false);
  for (std::size_t i = 2; i <= limit && out.size() < count; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

namespace {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // Extended Euclid on signed 64-bit values.
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw Error("no inverse modulo p");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

}  // namespace

PrimePoly::PrimePoly(std::uint32_t modulus, std::vector<std::uint32_t> coeffs) : p_(modulus), c_(std::move(coeffs)) {
  for (auto& v : c_) v %= p_;
  trim();
}

PrimePoly PrimePoly::reduce(const IntPoly& a, std::uint32_t modulus) {
  std::vector<std::uint32_t> c;
  c.reserve(a.coefficients().size());
  for (const auto& z : a.coefficients())
    c.push_back(static_cast<std::uint32_t>(mpz_fdiv_ui(z.get_mpz_t(), modulus)));
  return PrimePoly(modulus, std::move(c));
}

PrimePoly PrimePoly::x(std::uint32_t modulus) { return PrimePoly(modulus, {0, 1}); }

void PrimePoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PrimePoly PrimePoly::derivative() const {
  if (c_.size() <= 1) return PrimePoly(p_, {});
  std::vector<std::uint32_t> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k)
    d[k - 1] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(c_[k]) * (k % p_)) % p_);
  return PrimePoly(p_, std::move(d));
}

PrimePoly PrimePoly::monic() const {
  if (c_.empty() || c_.back() == 1) return *this;
  PrimePoly r = *this;
  simd::kernels().scale(r.c_.data(), r.c_.size(), inverse_mod(c_.back(), p_), p_);
  return r;
}

PrimePoly operator-(const PrimePoly& a, const PrimePoly& b) {
  std::vector<std::uint32_t> r = a.c_;
  if (b.c_.size() > r.size()) r.resize(b.c_.size(), 0);
  simd::kernels().axpy(r.data(), b.c_.data(), b.c_.size(), a.p_ - 1, a.p_);
  return PrimePoly(a.p_, std::move(r));
}

PrimePoly operator*(const PrimePoly& a, const PrimePoly& b) {
  if (a.is_zero() || b.is_zero()) return PrimePoly(a.p_, {});
  std::vector<std::uint32_t> r(a.c_.size() + b.c_.size() - 1, 0);
  const auto& k = simd::kernels();
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != 0) k.axpy(r.data() + i, b.c_.data(), b.c_.size(), a.c_[i], a.p_);
  return PrimePoly(a.p_, std::move(r));
}

PrimePoly PrimePoly::mod(const PrimePoly& f) const {
  if (f.is_zero()) throw Error("PrimePoly division by zero");
  if (degree() < f.degree()) return *this;
  const PrimePoly g = f.monic();
  std::vector<std::uint32_t> r = c_;
  const std::size_t df = static_cast<std::size_t>(g.degree());
  const auto& k = simd::kernels();
  for (std::size_t top = r.size(); top-- > df;) {
    const std::uint32_t lead = r[top];
    if (lead == 0) continue;
    k.axpy(r.data() + (top - df), g.c_.data(), df + 1, p_ - lead, p_);
  }
  r.resize(df);
  return PrimePoly(p_, std::move(r));
}

PrimePoly PrimePoly::quotient(const PrimePoly& f) const {
  if (f.is_zero()) throw Error("PrimePoly division by zero");
  if (degree() < f.degree()) return PrimePoly(p_, {});
  const std::uint32_t inv = inverse_mod(f.leading(), p_);
  const PrimePoly g = f.monic();
  std::vector<std::uint32_t> r = c_;
  const std::size_t df = static_cast<std::size_t>(g.degree());
  std::vector<std::uint32_t> q(r.size() - df, 0);
  const auto& k = simd::kernels();
  for (std::size_t top = r.size(); top-- > df;) {
    const std::uint32_t lead = r[top];
    if (lead == 0) continue;
    q[top - df] = lead;
    k.axpy(r.data() + (top - df), g.c_.data(), df + 1, p_ - lead, p_);
  }
  // a = q * g + r and g = f / lc(f), so a / f = q / lc(f).
  k.scale(q.data(), q.size(), inv, p_);
  return PrimePoly(p_, std::move(q));
}

PrimePoly gcd(const PrimePoly& a, const PrimePoly& b) {
  PrimePoly x = a, y = b;
  while (!y.is_zero()) {
    PrimePoly r = x.mod(y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

PrimePoly powmod(const PrimePoly& base, std::uint64_t e, const PrimePoly& f) {
  PrimePoly result(f.modulus(), {1});
  result = result.mod(f);
  PrimePoly b = base.mod(f);
  while (e > 0) {
    if (e & 1u) result = (result * b).mod(f);
    e >>= 1u;
    if (e > 0) b = (b * b).mod(f);
  }
  return result;
}

std::optional<std::vector<int>> cycle_type(const IntPoly& a, std::uint32_t p) {
  if (!is_prime(p)) throw Error("cycle_type: modulus " + std::to_string(p) + " is not prime");
  if (a.degree() < 1) throw Error("cycle_type: polynomial must have positive degree");
  const PrimePoly f0 = PrimePoly::reduce(a, p);
  if (f0.degree() != a.degree()) return std::nullopt;
  if (gcd(f0, f0.derivative()).degree() != 0) return std::nullopt;

  std::vector<int> parts;
  PrimePoly f = f0.monic();
  const PrimePoly x = PrimePoly::x(p);
  PrimePoly h = x.mod(f);
  for (int i = 1; 2 * i <= f.degree(); ++i) {
    h = powmod(h, p, f);  // x^(p^i) mod f
    const PrimePoly g = gcd(f, h - x);
    if (g.degree() > 0) {
      for (int j = 0; j < g.degree() / i; ++j) parts.push_back(i);
      f = f.quotient(g).monic();
      h = h.mod(f);
    }
  }
  if (f.degree() > 0) parts.push_back(f.degree());
  std::sort(parts.begin(), parts.end());
  return parts;
}

std::optional<std::vector<int>> cycle_type(const UniPoly& a, std::uint32_t p) {
  return cycle_type(a.to_int_primitive(), p);
}

}  // namespace dnash
