#pragma once

// Flat connector polynomials. The normalized connector
//
//   P_k(t) = C_k * sum_{i=0..k} binom(k,i) (-1)^i / (k+1+i) * t^(k+1+i),
//   C_k    = (2k+1)! / (k!)^2,
//
// solves P' = C_k t^k (1-t)^k with P(0) = 0 and P(1) = 1, so its first k
// derivatives vanish at both ends. A rising connector (family G) at level n
// with amplitude A is A * P_k(m^n x) on [0, m^-n]; a descending connector
// (family H) is A * P_k(1 - 2 m^n x) on the first half and identically zero on
// the second half.

#include <cstdint>
#include <string>
#include <vector>

#include "lsl/error.hpp"
#include "lsl/poly.hpp"
#include "lsl/rational.hpp"

namespace lsl {

inline constexpr int kDefaultMaxOrder = 8;

class SmoothnessOrder {
 public:
  explicit SmoothnessOrder(int k, int max_order = kDefaultMaxOrder) : k_(k) {
    if (k < 0) throw ValidationError("smoothness order k must be >= 0, got " + std::to_string(k));
    if (k > max_order)
      throw CapacityError("smoothness order k=" + std::to_string(k) + " exceeds the configured maximum " +
                          std::to_string(max_order));
  }
  int value() const { return k_; }
  unsigned degree() const { return static_cast<unsigned>(2 * k_ + 1); }
  friend bool operator==(SmoothnessOrder, SmoothnessOrder) = default;

 private:
  int k_;
};

enum class CurveFamily { G, H };

inline const char* to_string(CurveFamily f) { return f == CurveFamily::G ? "G" : "H"; }

struct CurveSpec {
  SmoothnessOrder k;
  long m;
  Rational beta;
  int level;
  CurveFamily family;
  Rational amplitude;

  void validate() const {
    if (m < 5 || m % 2 == 0) throw ValidationError("curve m must be odd and >= 5, got " + std::to_string(m));
    if (!(beta > 0 && beta < 1)) throw ValidationError("beta must lie in (0,1), got " + to_string(beta));
    if (level < 1) throw ValidationError("curve level must be >= 1");
    if (!(amplitude > 0)) throw ValidationError("curve amplitude must be positive");
  }

  // Width of the local domain, m^-level.
  Rational width() const { return Rational(1, ipow(Integer(m), static_cast<unsigned long>(level))); }
  // m^level: maps local x to the normalized variable t.
  Integer stretch() const { return ipow(Integer(m), static_cast<unsigned long>(level)); }
};

// (2k+1)! / (k!)^2.
inline Rational normalization_constant(SmoothnessOrder k) {
  const auto kk = static_cast<unsigned long>(k.value());
  const Integer kf = factorial(kk);
  Rational c(factorial(2 * kk + 1), kf * kf);
  c.canonicalize();
  return c;
}

// sum_{i=0..k} binom(k,i) (-1)^i / (k+1+i), the integral of t^k (1-t)^k over [0,1].
inline Rational alternating_sum(SmoothnessOrder k) {
  const auto kk = static_cast<unsigned long>(k.value());
  Rational s(0);
  for (unsigned long i = 0; i <= kk; ++i) {
    Rational term(binomial(kk, i), Integer(kk + 1 + i));
    term.canonicalize();
    if (i % 2 == 0) {
      s += term;
    } else {
      s -= term;
    }
  }
  return s;
}

// Coefficients of P_k in powers of t, degree 2k+1.
inline Polynomial normalized_connector(SmoothnessOrder k) {
  const auto kk = static_cast<unsigned long>(k.value());
  const Rational c = normalization_constant(k);
  std::vector<Rational> coeffs(2 * kk + 2, Rational(0));
  for (unsigned long i = 0; i <= kk; ++i) {
    Rational term(binomial(kk, i), Integer(kk + 1 + i));
    term.canonicalize();
    term *= c;
    coeffs[kk + 1 + i] = (i % 2 == 0) ? term : Rational(-term);
  }
  return Polynomial(std::move(coeffs));
}

namespace detail {

inline void check_local(const CurveSpec& spec, const Rational& x_local, int order) {
  spec.validate();
  if (order < 0) throw ValidationError("derivative order must be >= 0");
  if (x_local < 0 || x_local > spec.width())
    throw DomainError("local x " + to_string(x_local) + " outside [0, " + to_string(spec.width()) + "]");
}

}  // namespace detail

// j-th derivative of the rising connector at x_local in [0, m^-level].
inline Rational g_eval(const CurveSpec& spec, const Rational& x_local, int order = 0) {
  if (spec.family != CurveFamily::G) throw ValidationError("g_eval requires a G-family curve");
  detail::check_local(spec, x_local, order);
  const auto j = static_cast<unsigned long>(order);
  const Integer stretch = spec.stretch();
  const Rational t = x_local * stretch;
  const Polynomial dp = normalized_connector(spec.k).derivative(static_cast<unsigned>(order));
  return spec.amplitude * ipow(stretch, j) * dp(t);
}

// j-th derivative of the descending connector; zero on the flat second half.
inline Rational h_eval(const CurveSpec& spec, const Rational& x_local, int order = 0) {
  if (spec.family != CurveFamily::H) throw ValidationError("h_eval requires an H-family curve");
  detail::check_local(spec, x_local, order);
  const Integer stretch = spec.stretch();
  const Rational t = x_local * stretch;
  if (t * 2 >= 1) return Rational(0);
  const auto j = static_cast<unsigned long>(order);
  const Polynomial dp = normalized_connector(spec.k).derivative(static_cast<unsigned>(order));
  Rational factor = spec.amplitude * ipow(stretch * 2, j);
  if (j % 2 == 1) factor = -factor;
  return factor * dp(Rational(1 - 2 * t));
}

inline Rational curve_eval(const CurveSpec& spec, const Rational& x_local, int order = 0) {
  return spec.family == CurveFamily::G ? g_eval(spec, x_local, order) : h_eval(spec, x_local, order);
}

// Supremum of |f^(j)| for a connector, kept as an exact scale times an
// enclosure of the normalized supremum sup_{t in [0,1]} |P_k^(j)(t)|. The
// normalized factor is irrational for some (k, j), so only the scale is exact
// in general; two sups sharing the same normalized factor have an exact ratio.
struct SupValue {
  Rational scale;
  Enclosure normalized;

  Rational lower() const { return scale * normalized.lo; }
  Rational upper() const { return scale * normalized.hi; }
  bool exact() const { return normalized.exact(); }
  double approx() const { return to_double(scale) * normalized.approx(); }
};

// Exact ratio a / b; both sups must share the normalized factor.
inline Rational sup_ratio(const SupValue& a, const SupValue& b) {
  if (!(a.normalized == b.normalized))
    throw ValidationError("sup_ratio: values do not share a normalized supremum");
  return a.scale / b.scale;
}

inline Enclosure normalized_sup(SmoothnessOrder k, int order) {
  const Polynomial dp = normalized_connector(k).derivative(static_cast<unsigned>(order));
  return sup_abs(dp, Rational(0), Rational(1));
}

inline SupValue sup_abs_derivative(const CurveSpec& spec, int order) {
  spec.validate();
  if (order < 1 || order > static_cast<int>(spec.k.degree()))
    throw ValidationError("sup_abs_derivative: order must lie in [1, 2k+1]");
  const auto j = static_cast<unsigned long>(order);
  Integer chain = ipow(spec.stretch(), j);
  // The reflected argument 1 - 2 m^n x contributes 2^j; |.| drops the sign.
  if (spec.family == CurveFamily::H) chain *= ipow(Integer(2), j);
  return SupValue{spec.amplitude * chain, normalized_sup(spec.k, order)};
}

}  // namespace lsl
