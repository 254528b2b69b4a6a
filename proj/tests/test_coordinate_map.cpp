#include <hyperladder/coordinate_map.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"

using namespace hyperladder;

namespace {

const Real kPi = std::numbers::pi_v<Real>;

std::vector<Family> custom_families() {
  return {validate_family(Polynomial{2, 0, -2}, Polynomial{0, -5}, {Endpoint::at(-1), Endpoint::at(1)}, "scaled_jacobi"),
          validate_family(Polynomial{0, 1, -1}, Polynomial{1, -3}, {Endpoint::at(0), Endpoint::at(1)}, "unit_jacobi"),
          validate_family(Polynomial{1, 1}, Polynomial{0, -1}, {Endpoint::at(-1), Endpoint::plus_infinity()}, "shifted_laguerre"),
          validate_family(Polynomial{2}, Polynomial{1, -2}, {Endpoint::minus_infinity(), Endpoint::plus_infinity()}, "wide_hermite")};
}

/// 5-point central difference of s(x) against sign * kappa(s(x)).
void check_ode(const CoordinateMap &map, const Family &f) {
  const auto [lo, hi] = map.node_window(f);
  const Real h = 1e-3L;
  for (int i = 0; i <= 40; ++i) {
    const Real x = lo + (hi - lo) * i / 40;
    if (!map.contains(x - 2 * h) || !map.contains(x + 2 * h)) continue;
    const Real fd = (-map.s(x + 2 * h) + 8 * map.s(x + h) - 8 * map.s(x - h) + map.s(x - 2 * h)) / (12 * h);
    const Real s = map.s(x);
    const Real kappa = std::sqrt(f.sigma()(s));
    EXPECT_LE(std::fabs(fd - map.sign() * kappa), 1e-10L) << f.name() << " sign " << map.sign() << " x=" << static_cast<double>(x);
    EXPECT_LE(std::fabs(map.kappa(x) - kappa), 1e-10L);
    EXPECT_TRUE(f.contains(s));
  }
}

} // namespace

TEST(CoordinateMap, ClosedForms) {
  const CoordinateMap jac(presets::jacobi(Rational(1, 2), Rational(1, 2)), -1);
  EXPECT_EQ(jac.kind(), CoordinateMap::Kind::cosine);
  EXPECT_NEAR(static_cast<double>(jac.x_domain().first), 0, 1e-18);
  EXPECT_NEAR(static_cast<double>(jac.x_domain().second), std::numbers::pi, 1e-15);
  EXPECT_NEAR(static_cast<double>(jac.s(1)), std::cos(1.0), 1e-15);

  const CoordinateMap lag(presets::laguerre(0), 1);
  EXPECT_EQ(lag.kind(), CoordinateMap::Kind::quadratic);
  EXPECT_EQ(lag.x_domain().first, 0);
  EXPECT_TRUE(std::isinf(lag.x_domain().second));
  EXPECT_EQ(lag.s(3), Real(9) / 4);
  EXPECT_EQ(lag.ds_dx(3), Real(3) / 2);

  const CoordinateMap her(presets::hermite(), 1);
  EXPECT_EQ(her.kind(), CoordinateMap::Kind::identity);
  EXPECT_EQ(her.s(-2.5L), -2.5L);
  EXPECT_EQ(default_sign(presets::legendre()), -1);
  EXPECT_EQ(default_sign(presets::hermite()), 1);
}

TEST(CoordinateMap, OdeHoldsForPresetsAndCustomFamilies) {
  std::vector<Family> all = fixtures::presets();
  for (const Family &f : custom_families()) all.push_back(f);
  for (const Family &f : all)
    for (int sign : {1, -1}) check_ode(CoordinateMap(f, sign), f);
}

TEST(CoordinateMap, NumericMatchesReflectedClosedForms) {
  // same ODEs under the other sign, integrated numerically
  const CoordinateMap jac(presets::legendre(), 1);
  EXPECT_EQ(jac.kind(), CoordinateMap::Kind::numeric);
  for (Real x = 0.05L; x < kPi; x += 0.1L) EXPECT_NEAR(static_cast<double>(jac.s(x)), static_cast<double>(-std::cos(x)), 1e-11);
  const CoordinateMap lag(presets::laguerre(0), -1);
  EXPECT_EQ(lag.x_domain().second, 0);
  for (Real x = -8; x < 0; x += 0.37L) EXPECT_NEAR(static_cast<double>(lag.s(x)), static_cast<double>(x * x / 4), 1e-10);
  const CoordinateMap her(presets::hermite(), -1);
  for (Real x = -6; x < 6; x += 0.7L) EXPECT_NEAR(static_cast<double>(her.s(x)), static_cast<double>(-x), 1e-11);
}

TEST(CoordinateMap, MonotoneBijectionWithInverse) {
  std::vector<Family> all = fixtures::presets();
  for (const Family &f : custom_families()) all.push_back(f);
  for (const Family &f : all)
    for (int sign : {1, -1}) {
      const CoordinateMap map(f, sign);
      const auto [lo, hi] = map.node_window(f);
      Real prev = map.s(lo);
      for (int i = 1; i <= 50; ++i) {
        const Real x = lo + (hi - lo) * i / 50;
        const Real s = map.s(x);
        EXPECT_TRUE(sign > 0 ? s > prev : s < prev) << f.name();
        EXPECT_NEAR(static_cast<double>(map.x_of_s(s)), static_cast<double>(x), 1e-9);
        prev = s;
      }
    }
}

TEST(CoordinateMap, AnchorAndDomainErrors) {
  const Family leg = presets::legendre();
  EXPECT_THROW(CoordinateMap(leg, -1, Anchor{0, 2}), domain_error);
  EXPECT_THROW(CoordinateMap(leg, 0), std::invalid_argument);
  const CoordinateMap map(leg, -1);
  EXPECT_THROW(map.s(-0.1L), domain_error);
  EXPECT_THROW(map.s(4), domain_error);
  // anchor off the canonical curve shifts the domain and forces integration
  const CoordinateMap shifted(leg, -1, Anchor{1, 0});
  EXPECT_EQ(shifted.kind(), CoordinateMap::Kind::numeric);
  EXPECT_NEAR(static_cast<double>(shifted.x_domain().first), 1 - std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(static_cast<double>(shifted.s(1.3L)), std::cos(1.3 - 1 + std::numbers::pi / 2), 1e-11);
}
