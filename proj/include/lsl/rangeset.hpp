#pragma once

// The Cantor set S of values of f: y = sum_i d_i (beta/m)^i with digits
// d_i in {0, ..., b-2}. Level-n box ranges give covers of S by (b-1)^n
// intervals of length (beta/m)^n.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lsl/construction.hpp"
#include "lsl/interval_set.hpp"

namespace lsl {

// A digit string: a finite prefix followed by an infinite tail that is either
// all zeros or a repeated block.
class RangeAddress {
 public:
  RangeAddress() = default;
  explicit RangeAddress(std::vector<long> prefix, std::vector<long> repeat = {})
      : prefix_(std::move(prefix)), repeat_(std::move(repeat)) {
    if (std::all_of(repeat_.begin(), repeat_.end(), [](long d) { return d == 0; })) repeat_.clear();
  }

  const std::vector<long>& prefix() const { return prefix_; }
  const std::vector<long>& repeat() const { return repeat_; }
  bool finite() const { return repeat_.empty(); }

  // 1-based digit.
  long digit(std::size_t i) const {
    if (i == 0) throw DomainError("digits are 1-based");
    if (i <= prefix_.size()) return prefix_[i - 1];
    if (repeat_.empty()) return 0;
    return repeat_[(i - prefix_.size() - 1) % repeat_.size()];
  }

  // True when every digit after position i is zero.
  bool zero_after(std::size_t i) const {
    if (!repeat_.empty()) return false;
    for (std::size_t l = i; l < prefix_.size(); ++l)
      if (prefix_[l] != 0) return false;
    return true;
  }

  void validate(const Params& p) const {
    for (const auto* v : {&prefix_, &repeat_})
      for (long d : *v)
        if (d < 0 || d > p.b - 2)
          throw ValidationError("range digit " + std::to_string(d) + " outside [0, " + std::to_string(p.b - 2) + "]");
  }

  Rational value(const Params& p) const {
    validate(p);
    const Rational r = p.ratio();
    Rational v(0), scale(1);
    for (long d : prefix_) {
      scale *= r;
      v += Rational(d) * scale;
    }
    if (!repeat_.empty()) {
      Rational block(0), s(1);
      for (long d : repeat_) {
        s *= r;
        block += Rational(d) * s;
      }
      v += scale * block / (1 - s);
    }
    return v;
  }

  friend bool operator==(const RangeAddress&, const RangeAddress&) = default;

 private:
  std::vector<long> prefix_;
  std::vector<long> repeat_;
};

namespace detail {

inline void check_budget(const Integer& count, std::uint64_t budget, const char* what) {
  if (count > Integer(std::to_string(budget)))
    throw CapacityError(std::string(what) + " needs " + count.get_str() + " pieces, budget " + std::to_string(budget));
}

}  // namespace detail

inline IntervalSet s_cover(const Params& p, int n, std::uint64_t budget = kDefaultBudget) {
  if (n < 1) throw ValidationError("cover level must be >= 1");
  detail::check_budget(ipow(Integer(p.b - 1), static_cast<unsigned long>(n)), budget, "s_cover");
  const Rational r = p.ratio();
  std::vector<Rational> scales{Rational(1)};
  for (int i = 1; i <= n; ++i) scales.push_back(scales.back() * r);
  std::vector<Rational> lefts{Rational(0)};
  for (int i = 1; i <= n; ++i) {
    std::vector<Rational> next;
    next.reserve(lefts.size() * static_cast<std::size_t>(p.b - 1));
    for (const auto& lo : lefts)
      for (long d = 0; d <= p.b - 2; ++d) next.push_back(lo + Rational(d) * scales[static_cast<std::size_t>(i)]);
    lefts = std::move(next);
  }
  std::sort(lefts.begin(), lefts.end());
  std::vector<Interval> v;
  v.reserve(lefts.size());
  for (auto& lo : lefts) v.push_back({lo, lo + scales.back()});
  return IntervalSet(std::move(v));
}

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

namespace detail {

inline HighPrecision to_high(const Rational& q) {
  return HighPrecision(q.get_num().get_str()) / HighPrecision(q.get_den().get_str());
}

}  // namespace detail

// log(b-1) / (log m - log beta) with m = 2b-1. Total for b >= 2.
inline HighPrecision closed_form_dimension(long b, const Rational& beta) {
  if (b < 2) throw DomainError("closed_form_dimension needs b >= 2");
  if (!(beta > 0 && beta < 1)) throw DomainError("closed_form_dimension needs beta in (0,1)");
  using boost::multiprecision::log;
  return log(HighPrecision(b - 1)) / (log(HighPrecision(2 * b - 1)) - log(detail::to_high(beta)));
}

// The same expression with log(2b+1) in the denominator, as printed in the
// statement of the dimension formula; reported alongside for comparison.
inline HighPrecision closed_form_dimension_2b_plus_1(long b, const Rational& beta) {
  if (b < 2) throw DomainError("closed_form_dimension needs b >= 2");
  if (!(beta > 0 && beta < 1)) throw DomainError("closed_form_dimension needs beta in (0,1)");
  using boost::multiprecision::log;
  return log(HighPrecision(b - 1)) / (log(HighPrecision(2 * b + 1)) - log(detail::to_high(beta)));
}

struct NotMember {
  // First level where the residual leaves the attainable tail range.
  int level;
  // First level where y leaves the (b-1)^n interval cover, if within the scan.
  std::optional<int> cover_level;
};

using AddressLookup = std::variant<RangeAddress, NotMember>;

// Greedy digit extraction. y belongs to the level-n box ranges iff after each
// digit the residual lies in [0, (b-2)(beta/m)^i * beta/(m-beta)].
inline AddressLookup value_to_address(const Params& p, const Rational& y, int n, int cover_scan = 64) {
  if (y < 0 || y > 1) throw DomainError("y " + to_string(y) + " outside [0,1]");
  if (n < 1) throw ValidationError("address depth must be >= 1");
  const Rational r = p.ratio();
  const Rational tail_factor = p.range_max();  // (b-2) beta / (m - beta)
  std::vector<long> digits;
  std::optional<int> fail_level;
  std::optional<int> cover_level;
  Rational residual = y, scale(1);
  const int scan = std::max(n, cover_scan);
  for (int i = 1; i <= scan; ++i) {
    scale *= r;
    Integer d = floor(Rational(residual / scale));
    if (d < 0) d = 0;
    if (d > p.b - 2) d = p.b - 2;
    residual -= Rational(d) * scale;
    if (!fail_level && (residual < 0 || residual > tail_factor * scale)) fail_level = i;
    if (!cover_level && (residual < 0 || residual > scale)) cover_level = i;
    if (i <= n) digits.push_back(d.get_si());
    if (cover_level || (i >= n && !fail_level)) break;
  }
  if (fail_level) return NotMember{*fail_level, cover_level};
  return RangeAddress(std::move(digits));
}

enum class PieceKind { Box, Flat, Crossing };

inline const char* to_string(PieceKind k) {
  switch (k) {
    case PieceKind::Box: return "box";
    case PieceKind::Flat: return "flat";
    case PieceKind::Crossing: return "crossing";
  }
  return "?";
}

struct CoverPiece {
  Interval span;
  PieceKind kind;
  int level;
};

struct PreimageCover {
  std::vector<CoverPiece> pieces;

  IntervalSet intervals() const {
    std::vector<Interval> v;
    v.reserve(pieces.size());
    for (const auto& pc : pieces) v.push_back(pc.span);
    return IntervalSet(std::move(v));
  }
  std::size_t count(PieceKind k) const {
    return static_cast<std::size_t>(
        std::count_if(pieces.begin(), pieces.end(), [&](const CoverPiece& pc) { return pc.kind == k; }));
  }
};

namespace detail {

// Bracket t in [0,1] with P(t) = target for the increasing normalized
// connector, narrowing until the t-width is <= t_tol and the value spread is
// <= v_tol. Returns a degenerate bracket on an exact hit.
inline std::pair<Rational, Rational> bracket_crossing(const Polynomial& poly, const Rational& target,
                                                      const Rational& t_tol, const Rational& v_tol) {
  Rational a(0), c(1);
  while (true) {
    if (c - a <= t_tol && poly(c) - poly(a) <= v_tol) return {a, c};
    const Rational mid = (a + c) / 2;
    const Rational v = poly(mid);
    if (v == target) return {mid, mid};
    if (v < target) {
      a = mid;
    } else {
      c = mid;
    }
  }
}

}  // namespace detail

// Domain intervals whose image lies within (beta/m)^n of value(address):
// level-n box cells matched digit by digit (DiagonalBox(d), plus FinalBox when
// d = 0), the flat halves of descending connectors when the remaining tail is
// all zeros, and optionally brackets around crossings of monotone connectors.
inline PreimageCover preimage_cover(const Params& p, const RangeAddress& address, int n,
                                    bool include_crossings = true, std::uint64_t budget = kDefaultBudget) {
  if (n < 1) throw ValidationError("preimage depth must be >= 1");
  address.validate(p);
  Integer boxes(1);
  for (int i = 1; i <= n; ++i) boxes *= address.digit(static_cast<std::size_t>(i)) == 0 ? 2 : 1;
  // Every level adds at most a flat and two crossings per chain box.
  detail::check_budget(boxes * 3 * n + boxes, budget, "preimage_cover");

  const Rational r = p.ratio();
  const Rational y = address.value(p);
  const Polynomial connector = normalized_connector(p.k);
  PreimageCover out;

  struct Chain {
    Rational left;
    Rational floor;
  };
  std::vector<Chain> chains{{Rational(0), Rational(0)}};
  for (int level = 0; level < n; ++level) {
    const auto L = static_cast<unsigned long>(level);
    const Rational x_scale(1, ipow(Integer(p.m), L + 1));  // child cell width
    const Rational y_scale = pow(r, L + 1);                // child box height
    const long d = address.digit(L + 1);
    for (const Chain& ch : chains) {
      // Flat half of this box's descending connector maps to ch.floor.
      if (address.zero_after(L)) {
        const Rational h_lo = ch.left + Rational(2 * p.b - 3) * x_scale;
        out.pieces.push_back({{h_lo + x_scale / 2, h_lo + x_scale}, PieceKind::Flat, level + 1});
      }
      if (!include_crossings) continue;
      const Rational rel = (y - ch.floor) / y_scale;  // y in units of the child box height
      // Bracket widths: at most m^-n in x, at most (beta/m)^n in value.
      const Rational t_tol(1, ipow(Integer(p.m), static_cast<unsigned long>(n - level - 1)));
      const Rational v_tol = pow(r, static_cast<unsigned long>(n)) / y_scale;
      const bool tail_zero = address.zero_after(L + 1);
      if (d <= p.b - 3 && !tail_zero) {
        const Rational target = rel - d;  // in (0,1)
        auto [a, c] = detail::bracket_crossing(connector, target, t_tol, v_tol);
        const Rational g_lo = ch.left + Rational(2 * d + 1) * x_scale;
        out.pieces.push_back({{g_lo + a * x_scale, g_lo + c * x_scale}, PieceKind::Crossing, level + 1});
      }
      if (d < p.b - 2 && !(d == 0 && tail_zero)) {
        // (b-2) P(s) = rel with s = 1 - 2t, t in (0, 1/2).
        const Rational target = rel / (p.b - 2);
        auto [a, c] = detail::bracket_crossing(connector, target, t_tol, Rational(v_tol / (p.b - 2)));
        const Rational h_lo = ch.left + Rational(2 * p.b - 3) * x_scale;
        // s in [a, c] maps to t in [(1-c)/2, (1-a)/2].
        out.pieces.push_back({{h_lo + (1 - c) / 2 * x_scale, h_lo + (1 - a) / 2 * x_scale}, PieceKind::Crossing,
                              level + 1});
      }
    }
    std::vector<Chain> next;
    for (const Chain& ch : chains) {
      next.push_back({ch.left + Rational(2 * d) * x_scale, ch.floor + Rational(d) * y_scale});
      if (d == 0) next.push_back({ch.left + Rational(2 * p.b - 2) * x_scale, ch.floor});
    }
    chains = std::move(next);
  }
  const Rational width(1, ipow(Integer(p.m), static_cast<unsigned long>(n)));
  for (const Chain& ch : chains) out.pieces.push_back({{ch.left, ch.left + width}, PieceKind::Box, n});
  std::sort(out.pieces.begin(), out.pieces.end(),
            [](const CoverPiece& a, const CoverPiece& b) { return a.span.lo < b.span.lo || (a.span.lo == b.span.lo && a.span.hi < b.span.hi); });
  return out;
}

// Domain interval of length 1/(2 m^(n+1)) inside the DiagonalBox chain of a
// finite address where f equals value(address).
inline Interval flat_interval(const Params& p, const std::vector<long>& address) {
  RangeAddress(address).validate(p);
  Rational left(0), width(1);
  for (long d : address) {
    width /= p.m;
    left += Rational(2 * d) * width;
  }
  width /= p.m;
  const Rational h_lo = left + Rational(2 * p.b - 3) * width;
  return {h_lo + width / 2, h_lo + width};
}

}  // namespace lsl
