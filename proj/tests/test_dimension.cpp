#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lsl/dimension.hpp"
#include "test_support.hpp"

using namespace lsl;
using lsl::test::R;

namespace {

// Scan every grid cell over the hull and test it directly.
std::uint64_t brute_count(const IntervalSet& set, const Rational& eps, const Rational& anchor) {
  Rational lo = set.intervals().front().lo, hi = lo;
  for (const auto& iv : set.intervals()) {
    if (iv.lo < lo) lo = iv.lo;
    if (iv.hi > hi) hi = iv.hi;
  }
  std::uint64_t n = 0;
  for (Integer i = floor(Rational((lo - anchor) / eps)); Rational(i) * eps + anchor <= hi; ++i) {
    const Rational a = anchor + Rational(i) * eps;
    const Rational b = a + eps;
    bool hit = false;
    for (const auto& iv : set.intervals()) {
      if (iv.degenerate())
        hit = hit || (a <= iv.lo && iv.lo < b);
      else
        hit = hit || (iv.lo < b && a < iv.hi);
    }
    n += hit ? 1 : 0;
  }
  return n;
}

CountCurve power_law(long base_count, const Rational& base_scale, int n) {
  CountCurve c;
  std::uint64_t count = 1;
  Rational s(1);
  for (int i = 1; i <= n; ++i) {
    count *= static_cast<std::uint64_t>(base_count);
    s *= base_scale;
    c.push_back({s, count});
  }
  return c;
}

}  // namespace

TEST(BoxCountTest, Examples) {
  EXPECT_EQ(box_count(IntervalSet({{R("0"), R("1")}}), R("1/10")), 10u);
  for (const auto& eps : {R("1"), R("1/7"), R("1/1000")})
    EXPECT_EQ(box_count(IntervalSet({{R("1/3"), R("1/3")}}), eps), 1u);
  const Params p = validate_params(1, 5, R("1/2"));
  EXPECT_EQ(box_count(s_cover(p, 3), pow(R("1/18"), 3)), 64u);
  EXPECT_THROW(box_count(IntervalSet(), R("1/2")), DomainError);
  EXPECT_THROW(box_count(IntervalSet({{R("0"), R("1")}}), R("0")), DomainError);
}

TEST(BoxCountTest, AlignedLadderCountsAreExact) {
  for (const auto& [b, beta] : std::vector<std::pair<long, const char*>>{{5, "1/2"}, {3, "1/2"}, {5, "1/10"}, {4, "1/3"}}) {
    const Params p = validate_params(1, b, R(beta));
    const IntervalSet cover = s_cover(p, 5);
    std::uint64_t expect = 1;
    for (int n = 1; n <= 5; ++n) {
      expect *= static_cast<std::uint64_t>(b - 1);
      EXPECT_EQ(box_count(s_cover(p, n), pow(p.ratio(), static_cast<unsigned long>(n))), expect);
      EXPECT_EQ(box_count(cover, pow(p.ratio(), static_cast<unsigned long>(n))), expect);
    }
  }
}

TEST(BoxCountTest, MatchesCellScan) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Interval> v;
    const int k = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < k; ++i) {
      const Rational a = make_rational(static_cast<long>(rng() % 1000), 997);
      const Rational len = (rng() % 3 == 0) ? Rational(0) : make_rational(static_cast<long>(rng() % 200), 991);
      v.push_back({a, a + len});
    }
    const IntervalSet set(v);
    for (const auto& eps : {R("1/10"), R("1/37"), R("3/128")})
      for (const auto& anchor : {R("0"), Rational(eps / 2), Rational(eps / 3)})
        EXPECT_EQ(box_count(set, eps, anchor), brute_count(set, eps, anchor));
  }
}

TEST(BoxCountTest, GridShiftRobustness) {
  for (const auto& [b, beta] : std::vector<std::pair<long, const char*>>{{5, "1/2"}, {3, "1/2"}, {5, "1/10"}}) {
    const Params p = validate_params(1, b, R(beta));
    // Two levels finer than the ladder, so the finest grid does not sit at the
    // cover's own resolution.
    const IntervalSet cover = s_cover(p, 7);
    CountCurve at0, shifted;
    for (const auto& eps : scale_ladder(p, 5, Ladder::Natural)) {
      const auto n0 = box_count(cover, eps);
      const auto n1 = box_count(cover, eps, eps / 2);
      at0.push_back({eps, n0});
      shifted.push_back({eps, n1});
    }
    EXPECT_LE(std::abs(fit_dimension(at0, default_window(at0)).slope -
                       fit_dimension(shifted, default_window(shifted)).slope),
              0.02);
  }
}

TEST(BoxCountTest, ShiftChangesCountsByAtMostTwo) {
  for (const auto& [b, beta] : std::vector<std::pair<long, const char*>>{{5, "1/2"}, {3, "1/2"}, {5, "1/10"}}) {
    const Params p = validate_params(1, b, R(beta));
    const IntervalSet cover = s_cover(p, 5);
    for (const auto& eps : scale_ladder(p, 5, Ladder::Natural)) {
      const auto n0 = box_count(cover, eps);
      const auto n1 = box_count(cover, eps, eps / 2);
      EXPECT_LE(n1, 2 * n0);
      EXPECT_LE(n0, 2 * n1);
    }
  }
}

TEST(FitDimensionTest, Examples) {
  const CountCurve c = power_law(4, R("1/18"), 5);
  const DimFit fit = fit_dimension(c, {0, 4});
  EXPECT_NEAR(fit.slope, std::log(4.0) / std::log(18.0), 1e-9);
  EXPECT_NEAR(fit.residual, 0.0, 1e-9);
  EXPECT_NEAR(fit_dimension(power_law(10, R("1/10"), 6), {0, 5}).slope, 1.0, 1e-12);
  const DimFit flat = fit_dimension(power_law(1, R("1/3"), 5), {0, 4});
  EXPECT_EQ(flat.slope, 0.0);
  EXPECT_EQ(flat.residual, 0.0);
}

TEST(FitDimensionTest, Validation) {
  const CountCurve c = power_law(4, R("1/18"), 5);
  EXPECT_THROW(fit_dimension(c, {0, 1}), ValidationError);
  EXPECT_THROW(fit_dimension(c, {2, 7}), ValidationError);
  CountCurve bad = c;
  std::swap(bad[0], bad[1]);
  EXPECT_THROW(fit_dimension(bad, {0, 4}), ValidationError);
  EXPECT_EQ(default_window(c).first, 2u);
  EXPECT_EQ(default_window(power_law(4, R("1/18"), 4)).first, 0u);
  EXPECT_THROW(default_window(power_law(4, R("1/18"), 2)), ValidationError);
}

TEST(EstimateDimensionTest, Examples) {
  for (const auto& [b, beta] : std::vector<std::pair<long, const char*>>{{5, "1/2"}, {3, "1/2"}, {5, "1/10"}}) {
    const Params p = validate_params(1, b, R(beta));
    const double oracle = std::log(static_cast<double>(b - 1)) / (std::log(static_cast<double>(p.m)) - std::log(to_double(p.beta)));
    EXPECT_NEAR(estimate_s_dimension(p, 5).fit.slope, oracle, 0.02);
  }
  EXPECT_NEAR(estimate_s_dimension(validate_params(1, 3, R("1/2")), 5).fit.slope, std::log10(2.0), 0.02);
  const double tiny = estimate_s_dimension(validate_params(1, 5, R("1/1000")), 5).fit.slope;
  EXPECT_NEAR(tiny, std::log(4.0) / std::log(18000.0), 0.02);
  EXPECT_LT(tiny, estimate_s_dimension(validate_params(1, 5, R("1/2")), 5).fit.slope);
}

TEST(EstimateDimensionTest, ConvergesWithDepth) {
  const Params p = validate_params(1, 5, R("1/2"));
  const double oracle = static_cast<double>(closed_form_dimension(5, R("1/2")));
  double prev = 1.0;
  for (int depth = 3; depth <= 7; ++depth) {
    const double err = std::abs(estimate_s_dimension(p, depth).fit.slope - oracle);
    EXPECT_LE(err, prev + 1e-12);
    prev = err;
  }
}

TEST(EstimateDimensionTest, DyadicLadderStaysClose) {
  const Params p = validate_params(1, 5, R("1/2"));
  const auto est = estimate_s_dimension(p, 6, Ladder::Dyadic);
  for (std::size_t i = 1; i < est.curve.size(); ++i) EXPECT_GE(est.curve[i].count, est.curve[i - 1].count);
  EXPECT_NEAR(est.fit.slope, static_cast<double>(closed_form_dimension(5, R("1/2"))), 0.05);
}

TEST(EstimateDimensionTest, BudgetIsEnforced) {
  EXPECT_THROW(estimate_s_dimension(validate_params(1, 5, R("1/2")), 11), CapacityError);
}
