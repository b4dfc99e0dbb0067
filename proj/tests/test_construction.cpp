#include <gtest/gtest.h>

#include <random>

#include "lsl/construction.hpp"
#include "test_support.hpp"

using namespace lsl;
using lsl::test::R;

namespace {

Params standard() { return validate_params(1, 5, R("1/2")); }

Rational random_unit_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> den(1, 1'000'000'000);
  const long q = den(rng);
  std::uniform_int_distribution<long> num(0, q);
  Rational x(num(rng), q);
  x.canonicalize();
  return x;
}

}  // namespace

TEST(ValidateParamsTest, Examples) {
  EXPECT_EQ(validate_params(1, 5, R("1/2")).m, 9);
  EXPECT_EQ(validate_params(0, 3, R("9/10")).m, 5);
  EXPECT_THROW(validate_params(1, 2, R("1/2")), ValidationError);
  EXPECT_THROW(validate_params(1, 5, R("1")), ValidationError);
  EXPECT_THROW(validate_params(1, 5, R("0")), ValidationError);
  EXPECT_THROW(validate_params(-1, 5, R("1/2")), ValidationError);
}

TEST(CellTest, LayoutForFiveBoxes) {
  const Params p = standard();
  const CellKind expect[] = {CellKind::DiagonalBox, CellKind::GCurve, CellKind::DiagonalBox,
                             CellKind::GCurve,      CellKind::DiagonalBox, CellKind::GCurve,
                             CellKind::DiagonalBox, CellKind::HCurve, CellKind::FinalBox};
  for (long i = 0; i < p.m; ++i) EXPECT_EQ(cell_at(p, i).kind, expect[i]) << i;
  EXPECT_EQ(cell_at(p, 4).y_offset, R("1/9"));
  EXPECT_EQ(cell_at(p, 5).j, 2);
  EXPECT_EQ(cell_at(p, 8).y_offset, Rational(0));
}

TEST(CellTest, TilingIsContiguousThroughLevelFour) {
  for (const Params& p : {standard(), validate_params(2, 3, R("1/10"))}) {
    // Cells of all boxes at level n, in x order, tile [0,1].
    std::vector<Rational> lefts{Rational(0)};
    for (int n = 1; n <= 4; ++n) {
      const Rational w(1, ipow(Integer(p.m), static_cast<unsigned long>(n)));
      std::vector<Rational> spans;
      std::vector<Rational> next;
      for (const auto& left : lefts)
        for (long i = 0; i < p.m; ++i) {
          const Cell c = cell_at(p, i);
          spans.push_back(left + c.lo / ipow(Integer(p.m), static_cast<unsigned long>(n - 1)));
          EXPECT_EQ((c.hi - c.lo), Rational(1, p.m));
          if (c.is_box()) next.push_back(left + c.lo / ipow(Integer(p.m), static_cast<unsigned long>(n - 1)));
        }
      // Within each parent box the m cells are consecutive with width w.
      for (std::size_t i = 0; i < spans.size(); ++i)
        if (i % static_cast<std::size_t>(p.m) != 0) EXPECT_EQ(spans[i] - spans[i - 1], w);
      lefts = next;
    }
  }
}

TEST(LocateTest, FlatPartOfDescendingConnector) {
  const Params p = standard();
  for (int depth : {1, 3, 7}) {
    const PiecePath path = locate(p, R("15/18"), depth);
    ASSERT_TRUE(path.resolved());
    EXPECT_EQ(path.curve()->kind, CellKind::HCurve);
    EXPECT_EQ(path.curve()->level, 1);
    EXPECT_TRUE(path.digits.empty());
  }
}

TEST(LocateTest, ZeroIsTheBoxZeroFixedPoint) {
  const PiecePath path = locate(standard(), R("0"), 4);
  ASSERT_FALSE(path.resolved());
  EXPECT_EQ(std::get<BoxCapped>(path.terminal).level, 4);
  ASSERT_EQ(path.digits.size(), 4u);
  for (const auto& d : path.digits) EXPECT_EQ(d, (BoxDigit{CellKind::DiagonalBox, 0}));
}

TEST(LocateTest, RisingConnectorLocalCoordinate) {
  const PiecePath path = locate(standard(), R("3/18"), 5);
  ASSERT_TRUE(path.resolved());
  EXPECT_EQ(path.curve()->kind, CellKind::GCurve);
  EXPECT_EQ(path.curve()->j, 0);
  EXPECT_EQ(path.curve()->x_local, R("1/18"));
}

TEST(LocateTest, TieResolvesLeftAndOneStaysInTheFinalBox) {
  const Params p = standard();
  const PiecePath at_2_9 = locate(p, R("2/9"), 3);  // G0 | D1
  ASSERT_TRUE(at_2_9.resolved());
  EXPECT_EQ(at_2_9.curve()->kind, CellKind::GCurve);
  const PiecePath at_1 = locate(p, R("1"), 5);
  ASSERT_FALSE(at_1.resolved());
  for (const auto& d : at_1.digits) EXPECT_EQ(d.kind, CellKind::FinalBox);
  EXPECT_THROW(locate(p, R("-1/3"), 2), DomainError);
  EXPECT_THROW(locate(p, R("4/3"), 2), DomainError);
  EXPECT_THROW(locate(p, R("1/3"), 0), ValidationError);
}

TEST(EvaluateTest, Examples) {
  const Params p = standard();
  const EvalResult at0 = evaluate(p, R("0"), 6);
  EXPECT_EQ(at0.status, EvalStatus::DepthCapped);
  EXPECT_EQ(at0.value, pow(p.ratio(), 6) / 2);
  EXPECT_EQ(at0.error_bound, pow(p.ratio(), 6) / 2);

  for (const auto& x : {R("15/18"), R("31/36"), R("16/18")}) {
    const EvalResult r = evaluate(p, x, 3);
    EXPECT_EQ(r.value, Rational(0));
    EXPECT_EQ(r.status, EvalStatus::Exact);
  }
  const EvalResult at59 = evaluate(p, R("5/9"), 6);
  EXPECT_LE(abs(Rational(at59.value - R("1/9"))), at59.error_bound);
  EXPECT_EQ(at59.value, R("1/9"));
}

TEST(EvaluateTest, RisingConnectorValue) {
  // 3/18 is the midpoint of G0: f = r * P(1/2) = 1/36.
  const EvalResult r = evaluate(standard(), R("3/18"), 2);
  EXPECT_EQ(r.status, EvalStatus::Exact);
  EXPECT_EQ(r.value, R("1/36"));
}

TEST(EvaluateTest, SelfSimilarityInsideBoxes) {
  // f(x) = j r + r f(m x - 2j) on DiagonalBox(j).
  const Params p = standard();
  const Rational r = p.ratio();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Rational u = random_unit_rational(rng);
    for (long j = 0; j <= p.b - 2; ++j) {
      const Rational x = (Rational(2 * j) + u) / p.m;
      const EvalResult inner = evaluate(p, u, 6);
      const EvalResult outer = evaluate(p, x, 7);
      if (inner.status == EvalStatus::Exact && outer.status == EvalStatus::Exact)
        EXPECT_EQ(outer.value, Rational(j) * r + r * inner.value);
    }
  }
}

TEST(EvaluateTest, RefinementStaysWithinTailBound) {
  std::mt19937_64 rng(11);
  for (const Params& p : {standard(), validate_params(2, 3, R("1/10")), validate_params(0, 9, R("3/4"))}) {
    for (int i = 0; i < 200; ++i) {
      const Rational x = random_unit_rational(rng);
      for (int n = 1; n <= 6; ++n) {
        const EvalResult a = evaluate(p, x, n);
        const EvalResult b = evaluate(p, x, n + 1);
        EXPECT_LE(abs(Rational(b.value - a.value)), pow(p.ratio(), static_cast<unsigned long>(n)));
      }
    }
  }
}

TEST(EvaluateTest, CurvePointsStayExactAtLargerDepth) {
  const Params p = standard();
  std::mt19937_64 rng(3);
  int resolved = 0;
  for (int i = 0; i < 300; ++i) {
    const Rational x = random_unit_rational(rng);
    const EvalResult a = evaluate(p, x, 3);
    if (a.status != EvalStatus::Exact) continue;
    ++resolved;
    for (int d : {4, 8}) {
      const EvalResult b = evaluate(p, x, d);
      EXPECT_EQ(b.status, EvalStatus::Exact);
      EXPECT_EQ(b.value, a.value);
    }
  }
  EXPECT_GT(resolved, 100);
}

TEST(EvaluateTest, RangeConfinement) {
  std::mt19937_64 rng(5);
  for (const Params& p : {standard(), validate_params(1, 3, R("9/10"))}) {
    for (int i = 0; i < 300; ++i) {
      const EvalResult r = evaluate(p, random_unit_rational(rng), 5);
      EXPECT_GE(r.value - r.error_bound, 0);
      EXPECT_LE(r.value + r.error_bound, p.range_max() + pow(p.ratio(), 5));
    }
  }
}

TEST(DerivativeTest, Examples) {
  const Params p = standard();
  const EvalResult d = derivative(p, R("3/18"), 1, 4);
  EXPECT_EQ(d.status, EvalStatus::Exact);
  EXPECT_EQ(d.value, R("3/4"));
  EXPECT_EQ(derivative(p, R("31/36"), 1, 4).value, Rational(0));
  EXPECT_THROW(derivative(p, R("3/18"), 2, 4), ValidationError);
  EXPECT_THROW(derivative(p, R("3/18"), 0, 4), ValidationError);
}

TEST(DerivativeTest, BoxCappedBoundFromNextLevel) {
  // Inside a level-n box the steepest pieces are the level-(n+1) descending
  // connectors: 2 (b-2) (3/2) beta^(n+1) for k = 1.
  const Params p = standard();
  for (int n = 1; n <= 5; ++n) {
    const EvalResult d = derivative(p, R("0"), 1, n);
    EXPECT_EQ(d.status, EvalStatus::DepthCapped);
    EXPECT_EQ(d.value, Rational(0));
    EXPECT_EQ(d.error_bound, Rational(2 * 3) * R("3/2") * pow(p.beta, static_cast<unsigned long>(n + 1)));
  }
  // beta * m >= 1 for j = 2: suprema grow, no bound exists.
  const Params steep = validate_params(2, 5, R("1/2"));
  EXPECT_EQ(derivative(steep, R("0"), 2, 3).status, EvalStatus::Unbounded);
}

TEST(DerivativeTest, MatchesLocalPolynomial) {
  // Cross-check against the symbolic derivative of the local connector.
  const Params p = validate_params(3, 5, R("1/3"));
  const Polynomial poly = normalized_connector(p.k);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const Rational x = random_unit_rational(rng);
    const PiecePath path = locate(p, x, 5);
    if (!path.resolved() || path.curve()->kind != CellKind::GCurve) continue;
    const int n = path.curve()->level;
    const Integer stretch = ipow(Integer(p.m), static_cast<unsigned long>(n));
    for (int j = 1; j <= 3; ++j) {
      const Rational expect = pow(p.ratio(), static_cast<unsigned long>(n)) * ipow(stretch, static_cast<unsigned long>(j)) *
                              poly.derivative(static_cast<unsigned>(j))(Rational(path.curve()->x_local * stretch));
      EXPECT_EQ(derivative(p, x, j, 5).value, expect);
    }
  }
}

TEST(JunctionTableTest, LevelOneExamples) {
  const Params p = standard();
  const auto table = junction_table(p, 1);
  ASSERT_EQ(table.size(), 8u);
  EXPECT_EQ(table[0].x, R("1/9"));
  EXPECT_EQ(table[0].left_value, Rational(0));
  EXPECT_EQ(table[0].right_value, Rational(0));
  EXPECT_EQ(table[1].x, R("2/9"));
  EXPECT_EQ(table[1].left_value, p.ratio());
  EXPECT_EQ(table[1].right_value, p.ratio());
  for (const auto& row : table) {
    EXPECT_TRUE(row.continuous());
    EXPECT_TRUE(row.flat());
  }
}

TEST(JunctionTableTest, RowCountAndBudget) {
  const Params p = standard();
  EXPECT_EQ(junction_table(p, 3).size(), 8u * (1 + 5 + 25));
  EXPECT_THROW(junction_table(p, 3, 100), CapacityError);
}

TEST(JunctionTableTest, GrowingSupsLeaveBoxSideDerivativesUndefined) {
  const Params p = validate_params(2, 5, R("1/2"));  // beta m = 9/2 > 1
  const auto table = junction_table(p, 1);
  for (const auto& row : table) {
    EXPECT_TRUE(row.continuous());
    EXPECT_FALSE(row.flat());
  }
}

TEST(JunctionTableTest, AgreesWithEvaluateNearJunctions) {
  // One-sided limits against f evaluated a tiny step away.
  const Params p = validate_params(2, 3, R("1/10"));
  const Rational step = R("1/1000000000000");
  for (const auto& row : junction_table(p, 2)) {
    const EvalResult lv = evaluate(p, Rational(row.x - step), 12);
    const EvalResult rv = evaluate(p, Rational(row.x + step), 12);
    EXPECT_LE(abs(Rational(lv.value - row.left_value)), lv.error_bound + R("1/1000000"));
    EXPECT_LE(abs(Rational(rv.value - row.right_value)), rv.error_bound + R("1/1000000"));
  }
}
