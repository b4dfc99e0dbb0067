#include <gtest/gtest.h>

#include <cmath>

#include "lsl/poly.hpp"
#include "test_support.hpp"

using namespace lsl;
using lsl::test::R;

namespace {

Polynomial from_roots(const std::vector<Rational>& roots) {
  Polynomial p(std::vector<Rational>{Rational(1)});
  for (const auto& r : roots) p = p * Polynomial(std::vector<Rational>{-r, Rational(1)});
  return p;
}

}  // namespace

TEST(RationalTest, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/6"), R("1/2"));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(parse_rational("0.75"), R("3/4"));
  EXPECT_EQ(parse_rational("1.5e-3"), R("3/2000"));
  EXPECT_THROW(parse_rational("abc"), ValidationError);
  EXPECT_THROW(parse_rational(""), ValidationError);
  EXPECT_THROW(parse_rational("1/0"), ValidationError);
}

TEST(RationalTest, CanonicalStringsAndDecimals) {
  EXPECT_EQ(to_string(R("2/4")), "1/2");
  EXPECT_EQ(to_string(Rational(0)), "0");
  EXPECT_EQ(to_decimal(R("1/12")), "8.3333333333333333333e-2");
  EXPECT_EQ(to_decimal(Rational(9)), "9");
}

TEST(RationalTest, LogHandlesHugeDenominators) {
  const Rational tiny = pow(R("1/18"), 400);
  EXPECT_NEAR(log(tiny), -400 * std::log(18.0), 1e-9);
}

TEST(PolynomialTest, DivmodReconstructs) {
  const Polynomial p(std::vector<Rational>{R("1"), R("-3"), R("0"), R("2")});
  const Polynomial d(std::vector<Rational>{R("1/2"), R("1")});
  auto [q, r] = p.divmod(d);
  EXPECT_EQ(q * d + r, p);
  EXPECT_LT(r.degree(), d.degree());
}

TEST(PolynomialTest, ComposeAffineMatchesPointwise) {
  const Polynomial p(std::vector<Rational>{R("2"), R("-1"), R("3")});
  const Polynomial q = p.compose_affine(R("1"), R("-2"));
  for (const auto& t : {R("0"), R("1/3"), R("5/7")}) EXPECT_EQ(q(t), p(Rational(1 - 2 * t)));
}

TEST(PolynomialTest, IsolatesRationalAndIrrationalRoots) {
  // (t - 1/2)(t - 1/3)(t^2 - 2)/... on (0, 2): 1/3, 1/2 rational, sqrt(2) irrational.
  Polynomial p = from_roots({R("1/2"), R("1/3")}) * Polynomial(std::vector<Rational>{R("-2"), R("0"), R("1")});
  const auto iso = isolate_roots(p, R("0"), R("2"), R("1/1000000"));
  ASSERT_EQ(iso.exact.size() + iso.brackets.size(), 3u);
  bool saw_half = false;
  for (const auto& r : iso.exact) saw_half = saw_half || r == R("1/2");
  EXPECT_TRUE(saw_half);
  for (const auto& [a, b] : iso.brackets) {
    EXPECT_LE(b - a, R("1/1000000"));
    if (a > 1) {
      EXPECT_LT(a * a, 2);
      EXPECT_GT(b * b, 2);
    }
  }
}

TEST(PolynomialTest, RepeatedRootsCountOnce) {
  const Polynomial p = from_roots({R("1/4"), R("1/4"), R("3/4")});
  const auto iso = isolate_roots(p, R("0"), R("1"), R("1/1024"));
  EXPECT_EQ(iso.exact.size() + iso.brackets.size(), 2u);
}

TEST(PolynomialTest, SupAbsEnclosesDenseSampling) {
  // t^3 - t on [0,1]: max |.| at 1/sqrt(3), value 2/(3 sqrt 3).
  const Polynomial p(std::vector<Rational>{R("0"), R("-1"), R("0"), R("1")});
  const Enclosure e = sup_abs(p, R("0"), R("1"));
  const double truth = 2.0 / (3.0 * std::sqrt(3.0));
  EXPECT_LE(to_double(e.lo), truth + 1e-15);
  EXPECT_GE(to_double(e.hi), truth - 1e-15);
  EXPECT_LT(to_double(e.width()), 1e-15);
}

TEST(PolynomialTest, SupAbsExactWhenMaximiserRational) {
  // 6t(1-t): max 3/2 at t = 1/2.
  const Polynomial p(std::vector<Rational>{R("0"), R("6"), R("-6")});
  const Enclosure e = sup_abs(p, R("0"), R("1"));
  EXPECT_TRUE(e.exact());
  EXPECT_EQ(e.lo, R("3/2"));
}
