#pragma once

// Small reference functions with known level-set structure.
//
//   parabola   x - x^2
//   constant   1/2
//   staircase  block i >= 1 on [1 - 2^(1-i), 1 - 2^-i] is the copy
//              c + 2^(1-i) f1((x - c) / 2^(1-i)), c = 1 - 2^(1-i), of
//              f1(u) = 3u/2 on [0,1/6], 1/4 on [1/6,1/3], 3u/2 - 1/4 on [1/3,1/2]

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsl/interval_set.hpp"

namespace lsl {

enum class GalleryFn { Parabola, Constant, Staircase };

inline GalleryFn parse_gallery_fn(std::string_view name) {
  if (name == "parabola") return GalleryFn::Parabola;
  if (name == "constant") return GalleryFn::Constant;
  if (name == "staircase") return GalleryFn::Staircase;
  throw ValidationError("unknown gallery function '" + std::string(name) + "'");
}

inline const char* to_string(GalleryFn f) {
  switch (f) {
    case GalleryFn::Parabola: return "parabola";
    case GalleryFn::Constant: return "constant";
    case GalleryFn::Staircase: return "staircase";
  }
  return "?";
}

namespace detail {

inline Rational staircase_base(const Rational& u) {
  if (u <= Rational(1, 6)) return Rational(3, 2) * u;
  if (u <= Rational(1, 3)) return Rational(1, 4);
  return Rational(3, 2) * u - Rational(1, 4);
}

}  // namespace detail

inline Rational gallery_eval(GalleryFn fn, const Rational& x) {
  if (x < 0 || x > 1) throw DomainError("x " + to_string(x) + " outside [0,1]");
  switch (fn) {
    case GalleryFn::Parabola: return x - x * x;
    case GalleryFn::Constant: return Rational(1, 2);
    case GalleryFn::Staircase: {
      if (x == 1) return Rational(1);
      // Smallest i with x <= 1 - 2^-i.
      unsigned long i = 1;
      Rational tail(1, 2);
      while (x > 1 - tail) {
        ++i;
        tail /= 2;
      }
      const Rational size = tail * 2;  // 2^(1-i)
      const Rational corner = 1 - size;
      return corner + size * detail::staircase_base(Rational((x - corner) / size));
    }
  }
  throw ValidationError("unknown gallery function");
}

// Plateau value of staircase block i: (2^i - 3/2) / 2^i.
inline Rational staircase_plateau(unsigned long i) {
  if (i < 1) throw ValidationError("staircase blocks start at i = 1");
  const Integer two_i = ipow(Integer(2), i);
  Rational v(Rational(two_i) - Rational(3, 2));
  return v / two_i;
}

inline Interval staircase_plateau_preimage(unsigned long i) {
  const Rational size(1, ipow(Integer(2), i - 1));
  const Rational corner = 1 - size;
  return {corner + size / 6, corner + size / 3};
}

struct LevelValue {
  Rational value;
  IntervalSet preimage;
  std::size_t interval_count;
  Rational total_length;
  bool contains_interval;
};

// Level values y with dim_H f^-1(y) >= alpha, listed exactly where the set is
// finite or enumerable; `value_range` holds a whole interval of values.
struct LevelSetReport {
  GalleryFn fn;
  Rational alpha;
  std::vector<LevelValue> values;
  std::optional<Interval> value_range;
  std::optional<Rational> accumulation_point;  // limit of the listed values, not claimed a member
};

namespace detail {

inline LevelValue level_value(const Rational& y, IntervalSet pre) {
  LevelValue v{y, std::move(pre), 0, Rational(0), false};
  v.interval_count = v.preimage.size();
  v.total_length = v.preimage.total_length();
  for (const auto& iv : v.preimage.intervals()) v.contains_interval = v.contains_interval || !iv.degenerate();
  return v;
}

}  // namespace detail

inline LevelSetReport gallery_levelset(GalleryFn fn, const Rational& alpha, unsigned long count = 8) {
  if (alpha < 0 || alpha > 1) throw DomainError("alpha must lie in [0,1]");
  LevelSetReport rep{fn, alpha, {}, std::nullopt, std::nullopt};
  switch (fn) {
    case GalleryFn::Parabola:
      // Every level set is one or two points: only alpha = 0 keeps any value.
      if (alpha == 0) rep.value_range = Interval{Rational(0), Rational(1, 4)};
      break;
    case GalleryFn::Constant:
      rep.values.push_back(detail::level_value(Rational(1, 2), IntervalSet({{Rational(0), Rational(1)}})));
      break;
    case GalleryFn::Staircase:
      if (alpha == 0) rep.value_range = Interval{Rational(0), Rational(1)};
      for (unsigned long i = 1; i <= count; ++i)
        rep.values.push_back(
            detail::level_value(staircase_plateau(i), IntervalSet({staircase_plateau_preimage(i)})));
      rep.accumulation_point = Rational(1);
      break;
  }
  return rep;
}

}  // namespace lsl
