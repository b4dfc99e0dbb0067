#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "lsl/rangeset.hpp"

namespace lsl {

struct CountPoint {
  Rational scale;
  std::uint64_t count;
};

// Box counts ordered by strictly decreasing scale.
using CountCurve = std::vector<CountPoint>;

// Number of grid cells [a + i*eps, a + (i+1)*eps] needed to cover the set: a
// non-degenerate interval takes the cells meeting its interior, a point takes
// the half-open cell containing it. Counted exactly over merged index ranges.
inline std::uint64_t box_count(const IntervalSet& set, const Rational& eps, const Rational& anchor = Rational(0)) {
  if (set.empty()) throw DomainError("box_count of an empty set");
  if (!(eps > 0)) throw DomainError("box_count needs eps > 0");
  std::vector<std::pair<Integer, Integer>> ranges;  // inclusive cell index ranges
  ranges.reserve(set.size());
  for (const auto& iv : set.intervals()) {
    const Rational lo = (iv.lo - anchor) / eps;
    if (iv.degenerate()) {
      const Integer c = floor(lo);
      ranges.emplace_back(c, c);
    } else {
      const Rational hi = (iv.hi - anchor) / eps;
      ranges.emplace_back(floor(lo), ceil(hi) - 1);
    }
  }
  std::sort(ranges.begin(), ranges.end());
  Integer total(0);
  Integer cur_lo = ranges.front().first, cur_hi = ranges.front().second;
  for (std::size_t i = 1; i < ranges.size(); ++i) {
    if (ranges[i].first <= cur_hi + 1) {
      if (ranges[i].second > cur_hi) cur_hi = ranges[i].second;
      continue;
    }
    total += cur_hi - cur_lo + 1;
    cur_lo = ranges[i].first;
    cur_hi = ranges[i].second;
  }
  total += cur_hi - cur_lo + 1;
  if (total > Integer(std::to_string(std::numeric_limits<std::uint64_t>::max())))
    throw CapacityError("box count exceeds 64 bits");
  return std::stoull(total.get_str());
}

struct FitWindow {
  std::size_t first;  // inclusive index into the curve
  std::size_t last;   // inclusive
};

struct DimFit {
  double slope;
  double intercept;
  double residual;  // max |log N - (slope * log(1/eps) + intercept)| over the window
  FitWindow window;
};

// Drops the two coarsest scales; short curves (< 5 scales) are fitted whole.
inline FitWindow default_window(const CountCurve& curve) {
  if (curve.size() < 3) throw ValidationError("a dimension fit needs at least 3 scales");
  if (curve.size() < 5) return {0, curve.size() - 1};
  return {2, curve.size() - 1};
}

// Least-squares slope of log N against log(1/eps).
inline DimFit fit_dimension(const CountCurve& curve, FitWindow w) {
  if (w.last >= curve.size() || w.first > w.last || w.last - w.first + 1 < 3)
    throw ValidationError("fit window needs at least 3 points inside the curve");
  for (std::size_t i = 1; i < curve.size(); ++i)
    if (!(curve[i].scale < curve[i - 1].scale)) throw ValidationError("count curve scales must strictly decrease");
  std::vector<double> xs, ys;
  for (std::size_t i = w.first; i <= w.last; ++i) {
    if (curve[i].count == 0) throw ValidationError("count curve has a zero count");
    xs.push_back(-log(curve[i].scale));
    ys.push_back(std::log(static_cast<double>(curve[i].count)));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double residual = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    residual = std::max(residual, std::abs(ys[i] - (slope * xs[i] + intercept)));
  return {slope, intercept, residual, w};
}

enum class Ladder { Natural, Dyadic };

// Scales for a cover built to max_depth: (beta/m)^n for n = 1..max_depth, or
// the powers of 1/2 lying in [(beta/m)^max_depth, beta/m].
inline std::vector<Rational> scale_ladder(const Params& p, int max_depth, Ladder ladder) {
  std::vector<Rational> out;
  const Rational r = p.ratio();
  if (ladder == Ladder::Natural) {
    Rational s(1);
    for (int n = 1; n <= max_depth; ++n) out.push_back(s *= r);
    return out;
  }
  const Rational finest = pow(r, static_cast<unsigned long>(max_depth));
  Rational s(1);
  while (s > r) s /= 2;
  for (; s >= finest; s /= 2) out.push_back(s);
  return out;
}

struct DimensionEstimate {
  CountCurve curve;
  DimFit fit;
};

inline DimensionEstimate estimate_s_dimension(const Params& p, int max_depth, Ladder ladder = Ladder::Natural,
                                              std::uint64_t budget = kDefaultBudget) {
  const IntervalSet cover = s_cover(p, max_depth, budget);
  DimensionEstimate out;
  for (const auto& eps : scale_ladder(p, max_depth, ladder)) out.curve.push_back({eps, box_count(cover, eps)});
  out.fit = fit_dimension(out.curve, default_window(out.curve));
  return out;
}

}  // namespace lsl
