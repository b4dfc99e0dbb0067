#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "lsl/rational.hpp"

namespace lsl {

// Dense univariate polynomial with exact rational coefficients; coeffs()[i]
// multiplies t^i. The zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(const Rational& c, std::size_t power) {
    std::vector<Rational> v(power + 1, Rational(0));
    v[power] = c;
    return Polynomial(std::move(v));
  }

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& t) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc *= t;
      acc += *it;
    }
    return acc;
  }

  Polynomial derivative(unsigned order = 1) const {
    std::vector<Rational> c = coeffs_;
    for (unsigned o = 0; o < order && !c.empty(); ++o) {
      std::vector<Rational> d(c.size() > 1 ? c.size() - 1 : 0);
      for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<unsigned long>(i);
      c = std::move(d);
    }
    return Polynomial(std::move(c));
  }

  // p(a + s*t) as a polynomial in t.
  Polynomial compose_affine(const Rational& a, const Rational& s) const {
    Polynomial out;
    const Polynomial lin(std::vector<Rational>{a, s});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      out = out * lin + Polynomial(std::vector<Rational>{*it});
    }
    return out;
  }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<Rational> c(std::max(p.coeffs_.size(), q.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) c[i] += p.coeffs_[i];
    for (std::size_t i = 0; i < q.coeffs_.size(); ++i) c[i] += q.coeffs_[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& p, const Polynomial& q) {
    std::vector<Rational> c(std::max(p.coeffs_.size(), q.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) c[i] += p.coeffs_[i];
    for (std::size_t i = 0; i < q.coeffs_.size(); ++i) c[i] -= q.coeffs_[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<Rational> c(p.coeffs_.size() + q.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < q.coeffs_.size(); ++j) c[i + j] += p.coeffs_[i] * q.coeffs_[j];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Rational& s, const Polynomial& p) {
    std::vector<Rational> c = p.coeffs_;
    for (auto& x : c) x *= s;
    return Polynomial(std::move(c));
  }

  friend bool operator==(const Polynomial& p, const Polynomial& q) { return p.coeffs_ == q.coeffs_; }

  // Euclidean division; divisor must be non-zero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
    std::vector<Rational> rem = coeffs_;
    const long dd = divisor.degree();
    if (degree() < dd) return {Polynomial(), *this};
    std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd + 1), Rational(0));
    for (long i = degree(); i >= dd; --i) {
      const Rational c = rem[static_cast<std::size_t>(i)] / divisor.leading();
      quot[static_cast<std::size_t>(i - dd)] = c;
      if (c == 0) continue;
      for (long j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i - dd + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    return Rational(1 / leading()) * *this;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

inline Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline Polynomial square_free_part(const Polynomial& p) {
  if (p.degree() <= 0) return p;
  return p.divmod(gcd(p, p.derivative())).first;
}

// Closed rational interval; lo == hi marks an exactly known quantity.
struct Enclosure {
  Rational lo;
  Rational hi;

  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  double approx() const { return to_double(Rational((lo + hi) / 2)); }
  friend bool operator==(const Enclosure&, const Enclosure&) = default;
};

// Sturm chain for a square-free polynomial.
class SturmChain {
 public:
  explicit SturmChain(const Polynomial& square_free) {
    chain_.push_back(square_free);
    if (square_free.degree() <= 0) return;
    chain_.push_back(square_free.derivative());
    while (chain_.back().degree() > 0) {
      auto rem = chain_[chain_.size() - 2].divmod(chain_.back()).second;
      if (rem.is_zero()) break;
      chain_.push_back(Rational(-1) * rem);
    }
  }

  // Number of distinct roots in (a, b]; a must not be a root.
  int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

 private:
  int variations(const Rational& t) const {
    int changes = 0, last = 0;
    for (const auto& p : chain_) {
      const int s = sgn(p(t));
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

  std::vector<Polynomial> chain_;
};

// Real roots of p in the open interval (lo, hi): exact rational roots found by
// bisection, the rest as isolating intervals refined to width <= tol.
struct RootIsolation {
  std::vector<Rational> exact;
  std::vector<std::pair<Rational, Rational>> brackets;
};

inline RootIsolation isolate_roots(const Polynomial& p, const Rational& lo, const Rational& hi,
                                   const Rational& tol) {
  RootIsolation out;
  if (p.is_zero()) throw DomainError("isolate_roots: zero polynomial");
  Polynomial q = square_free_part(p);
  // Deflate roots sitting exactly on the interval ends.
  for (const Rational* end : {&lo, &hi}) {
    if (q.degree() > 0 && q(*end) == 0) q = q.divmod(Polynomial(std::vector<Rational>{-*end, Rational(1)})).first;
  }
  if (q.degree() <= 0) return out;

  std::vector<std::pair<Rational, Rational>> work{{lo, hi}};
  std::vector<std::pair<Rational, Rational>> isolated;
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    const SturmChain chain(q);
    const int n = chain.count(a, b);
    if (n == 0) continue;
    if (n == 1 && q(b) != 0) {
      isolated.emplace_back(a, b);
      continue;
    }
    const Rational mid = (a + b) / 2;
    if (q(mid) == 0) {
      out.exact.push_back(mid);
      q = q.divmod(Polynomial(std::vector<Rational>{-mid, Rational(1)})).first;
      if (q.degree() <= 0) break;
      // Restart from the pieces still pending; deflation changed the chain.
      work.emplace_back(a, b);
      continue;
    }
    work.emplace_back(a, mid);
    work.emplace_back(mid, b);
  }
  for (auto [a, b] : isolated) {
    if (q.degree() <= 0) break;
    // Earlier deflations may have removed this root (it was found exactly).
    if (SturmChain(q).count(a, b) == 0) continue;
    int sa = sgn(q(a));
    bool hit = false;
    while (b - a > tol) {
      const Rational mid = (a + b) / 2;
      const int sm = sgn(q(mid));
      if (sm == 0) {
        out.exact.push_back(mid);
        hit = true;
        break;
      }
      if (sm == sa) {
        a = mid;
      } else {
        b = mid;
      }
    }
    if (!hit) out.brackets.emplace_back(a, b);
  }
  std::sort(out.exact.begin(), out.exact.end());
  std::sort(out.brackets.begin(), out.brackets.end());
  return out;
}

// Enclosure of max |p(t)| over [lo, hi], attained at an end or at a root of
// p'. Exact when the maximiser is rational (or the ends dominate).
inline Enclosure sup_abs(const Polynomial& p, const Rational& lo, const Rational& hi,
                         const Rational& tol = Rational(1, Integer(1) << 80)) {
  Rational best_exact = std::max(abs(p(lo)), abs(p(hi)));
  Rational best_upper = best_exact;
  const Polynomial dp = p.derivative();
  if (dp.is_zero()) return {best_exact, best_exact};
  // |p'| <= sum |coeffs| * max(1, |t|)^deg on the interval.
  const Rational reach = std::max({Rational(1), abs(lo), abs(hi)});
  Rational lipschitz(0);
  for (const auto& c : dp.coeffs()) lipschitz += abs(c);
  lipschitz *= pow(reach, static_cast<unsigned long>(std::max<long>(dp.degree(), 0)));

  const auto roots = isolate_roots(dp, lo, hi, tol);
  for (const auto& r : roots.exact) best_exact = std::max(best_exact, abs(p(r)));
  best_upper = best_exact;
  Rational lower = best_exact;
  for (const auto& [a, b] : roots.brackets) {
    const Rational ends = std::max(abs(p(a)), abs(p(b)));
    lower = std::max(lower, ends);
    best_upper = std::max(best_upper, Rational(ends + lipschitz * (b - a)));
  }
  return {lower, best_upper};
}

}  // namespace lsl
