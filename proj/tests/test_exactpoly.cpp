#include <hyperladder/half_power.hpp>
#include <hyperladder/polynomial.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hyperladder;

namespace {
Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}
} // namespace

TEST(Rational, ParsesAndPrintsCanonically) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-2/-4")), "1/2");
  EXPECT_EQ(to_string(parse_rational("5")), "5");
  EXPECT_EQ(to_string(parse_rational("-0.25")), "-1/4");
  EXPECT_EQ(to_string(parse_rational("1.5e2")), "150");
  EXPECT_EQ(to_string(parse_rational("2.5e-1")), "1/4");
  EXPECT_THROW(parse_rational("1/0"), parse_error);
  EXPECT_THROW(parse_rational("abc"), parse_error);
  EXPECT_THROW(parse_rational(""), parse_error);
}

TEST(Rational, LongDoubleConversionKeepsExtraPrecision) {
  const Rational third = q(1, 3);
  EXPECT_NEAR(static_cast<double>((to_floating<long double>(third) - 1.0L / 3.0L) * 1e19L), 0.0, 1.0);
  Rational big = factorial(40) / 7;
  EXPECT_NEAR(static_cast<double>(to_floating<long double>(big) / (to_floating<long double>(factorial(40)) / 7)), 1.0,
              1e-18);
}

TEST(Polynomial, ArithmeticExamples) {
  const Polynomial s{0, 1};
  EXPECT_EQ(Polynomial({-1, 0, 1}) + Polynomial{1}, Polynomial({0, 0, 1}));
  EXPECT_EQ(s * s, Polynomial({0, 0, 1}));
  EXPECT_TRUE(Polynomial({1, 1}).scaled(0).is_zero());
  EXPECT_EQ(Polynomial({1, 1}).scaled(0).degree(), -1);
  EXPECT_EQ((Polynomial({1, 2, 3}) - Polynomial({1, 2, 3})).degree(), -1);
}

TEST(Polynomial, DerivativeExamples) {
  EXPECT_EQ(Polynomial({-q(1, 3), 0, 1}).derivative(), Polynomial({0, 2}));
  EXPECT_TRUE(Polynomial{5}.derivative().is_zero());
  EXPECT_EQ(Polynomial({0, -q(3, 2), 0, 1}).derivative(), Polynomial({-q(3, 2), 0, 3}));
}

TEST(Polynomial, EvaluateExamples) {
  EXPECT_EQ(Polynomial({-q(1, 3), 0, 1})(Rational(1)), q(2, 3));
  EXPECT_EQ(Polynomial({7, 3, -2})(Rational(0)), Rational(7));
  EXPECT_EQ(Polynomial({1, 0, -1})(q(1, 2)), q(3, 4));
  EXPECT_DOUBLE_EQ(Polynomial({1, 0, -1})(0.5), 0.75);
}

TEST(Polynomial, StringForm) {
  EXPECT_EQ(Polynomial({-q(1, 3), 0, 1}).str(), "s^2 - 1/3");
  EXPECT_EQ(Polynomial({0, -q(3, 2), 0, 1}).str(), "s^3 - 3/2*s");
  EXPECT_EQ(Polynomial{}.str(), "0");
}

TEST(Polynomial, LeibnizRuleAndEvaluationHomomorphism) {
  std::mt19937 rng(oracle::seed());
  std::uniform_int_distribution<int> deg(0, 7);
  for (int trial = 0; trial < 200; ++trial) {
    const Polynomial p = oracle::random_polynomial(rng, deg(rng));
    const Polynomial r = oracle::random_polynomial(rng, deg(rng));
    EXPECT_EQ((p * r).derivative(), p.derivative() * r + p * r.derivative());
    const Rational s = q(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 7) + 1);
    EXPECT_EQ((p * r)(s), p(s) * r(s));
    EXPECT_EQ((p + r)(s), p(s) + r(s));
  }
}

TEST(HalfPower, EqualityExamples) {
  const Polynomial sigma{1, 0, -1};
  const Polynomial two_s{0, 2};
  EXPECT_TRUE(hp_equal({two_s, 1, sigma}, {two_s, 1, sigma}));
  EXPECT_TRUE(hp_equal({sigma * Polynomial{1}, 0, sigma}, {Polynomial{1}, 2, sigma}));
  EXPECT_FALSE(hp_equal({Polynomial{0, 1}, 1, sigma}, {Polynomial{0, 1}, 0, sigma}));
  EXPECT_TRUE(hp_equal({Polynomial{}, 1, sigma}, {Polynomial{}, 0, sigma}));
}

TEST(HalfPower, MismatchedSigmaIsADomainError) {
  const HalfPowerFunction f{Polynomial{1}, 0, Polynomial{1, 0, -1}};
  const HalfPowerFunction g{Polynomial{1}, 0, Polynomial{0, 1}};
  EXPECT_THROW((void)hp_equal(f, g), domain_error);
}

TEST(HalfPower, EqualityIsAnEquivalenceRelation) {
  std::mt19937 rng(oracle::seed() + 1);
  const Polynomial sigma{1, 0, -1};
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial p = oracle::random_polynomial(rng, 3);
    const unsigned k = rng() % 3;
    // Three representations of one function, plus one of the other parity.
    const HalfPowerFunction x{p * sigma.pow(2), k, sigma}, y{p * sigma, k + 2, sigma}, z{p, k + 4, sigma};
    const HalfPowerFunction odd{p, k + 1, sigma};
    EXPECT_TRUE(hp_equal(x, x));
    EXPECT_TRUE(hp_equal(x, y) && hp_equal(y, x));
    EXPECT_TRUE(hp_equal(x, y) && hp_equal(y, z) && hp_equal(x, z));
    EXPECT_FALSE(hp_equal(z, odd) || hp_equal(odd, z));
    EXPECT_FALSE(hp_equal(HalfPowerFunction{p + Polynomial{1}, k + 4, sigma}, z));
  }
}

TEST(HalfPower, SumLowersToCommonPower) {
  const Polynomial sigma{0, 1};
  const HalfPowerFunction f{Polynomial{1}, 3, sigma}, g{Polynomial{2}, 1, sigma};
  const HalfPowerFunction h = f + g;
  EXPECT_EQ(h.halfpower(), 1u);
  EXPECT_EQ(h.poly(), Polynomial({2, 1}));
  EXPECT_THROW((void)(f + HalfPowerFunction{Polynomial{1}, 0, sigma}), domain_error);
  EXPECT_NEAR(h(4.0), (4.0 + 2.0) * 2.0, 1e-15);
}
