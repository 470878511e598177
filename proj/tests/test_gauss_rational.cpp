#include <gtest/gtest.h>

#include "cmc1/polynomial.hpp"

using namespace cmc1;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("12"), Rational(12));
  EXPECT_EQ(parse_rational("-9.9"), Rational(-99, 10));
  EXPECT_EQ(parse_rational("1.25e-3"), Rational(1, 800));
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(Rational, ExactSqrt) {
  EXPECT_EQ(*exact_sqrt(Rational(9, 4)), Rational(3, 2));
  EXPECT_FALSE(exact_sqrt(Rational(2)).has_value());
  EXPECT_FALSE(exact_sqrt(Rational(-4)).has_value());
}

TEST(GaussRational, FieldOperations) {
  const GaussRational a(Rational(1, 2), Rational(3));
  const GaussRational b(Rational(-2), Rational(1, 3));
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ(a + b - b, a);
  EXPECT_EQ(GaussRational(0, 1) * GaussRational(0, 1), GaussRational(-1));
  EXPECT_EQ(a * a.conj(), GaussRational(a.norm()));
  EXPECT_THROW(a / GaussRational(0), std::domain_error);
}

TEST(GaussRational, SquareRoots) {
  // (1 + 2i)^2 = -3 + 4i
  const auto r = GaussRational(-3, 4).exact_sqrt();
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, GaussRational(1, 2));
  EXPECT_EQ(*GaussRational(-4).exact_sqrt(), GaussRational(0, 2));
  EXPECT_FALSE(GaussRational(2).exact_sqrt().has_value());
}

TEST(GaussRational, StringRoundTrip) {
  for (const GaussRational& x : {GaussRational(Rational(3, 4)), GaussRational(Rational(0), Rational(-1)),
                                 GaussRational(Rational(-1, 2), Rational(5, 3)), GaussRational(Rational(2), Rational(-7))}) {
    EXPECT_EQ(GaussRational::parse(x.str()), x) << x.str();
  }
  EXPECT_EQ(GaussRational::parse("i"), GaussRational(0, 1));
  EXPECT_EQ(GaussRational::parse("-i"), GaussRational(0, -1));
  EXPECT_EQ(GaussRational::parse("1-i"), GaussRational(1, -1));
}

TEST(GaussRational, FromComplexIsExact) {
  const GaussRational x = GaussRational::from_complex({0.1, -2.5});
  EXPECT_EQ(x.to_complex(), Complex(0.1, -2.5));
  EXPECT_EQ(x.imag(), Rational(-5, 2));
}
