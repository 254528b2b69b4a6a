#include <hyperladder/schrodinger.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "fixtures.hpp"

using namespace hyperladder;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::vector<SchrodingerSystem> systems() {
  std::vector<SchrodingerSystem> out;
  for (const Family &f : fixtures::presets()) out.push_back(make_system(f));
  // a numerically integrated map
  out.push_back(make_system(validate_family(Polynomial{1, 1}, Polynomial{0, -1},
                                            {Endpoint::at(-1), Endpoint::plus_infinity()}, "shifted_laguerre")));
  return out;
}

Real max_abs(const std::vector<Real> &v) {
  Real m = 0;
  for (Real x : v) m = std::max(m, std::fabs(x));
  return m;
}

/// Potential as printed, with mu(mu-1) over cos^2(x/2).
Real printed_pt_potential(Real mu, Real eta, Real x) {
  const Real c = std::cos(x / 2), s = std::sin(x / 2);
  return (mu * (mu - 1) / (c * c) + eta * (eta - 1) / (s * s)) / 4 - (mu + eta) * (mu + eta) / 4;
}

} // namespace

TEST(PoschlTeller, SuperpotentialClosedForm) {
  for (auto [mu, eta] : {std::pair{q(1), q(1)}, {q(2), q(2)}, {q(3, 2), q(3, 2)}, {q(3, 2), q(5, 2)}, {q(1, 3), q(4)}}) {
    const SchrodingerSystem sys = poschl_teller_preset(mu, eta);
    const Real m = to_floating<Real>(mu), e = to_floating<Real>(eta);
    const std::vector<Real> grid = interior_grid(sys, 500);
    const std::vector<Real> w = superpotential(sys, 0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Real x = grid[i];
      const Real expect = (m / std::tan(x / 2) - e * std::tan(x / 2)) / 2;
      EXPECT_LE(std::fabs(w[i] - expect), 1e-10L * std::max<Real>(1, std::fabs(expect))) << "x=" << static_cast<double>(x);
    }
  }
  const SchrodingerSystem one = poschl_teller_preset(1, 1);
  for (Real x : interior_grid(one, 50)) EXPECT_NEAR(static_cast<double>(superpotential_at(one, 0, x)), static_cast<double>(1 / std::tan(x)), 1e-12);
}

TEST(PoschlTeller, PotentialAndSpectrum) {
  const SchrodingerSystem one = poschl_teller_preset(1, 1);
  for (Real v : potential(one, 0, interior_grid(one, 500))) EXPECT_NEAR(static_cast<double>(v), -1.0, 1e-10);
  for (unsigned l = 0; l <= 8; ++l) EXPECT_EQ(one.family.eigenvalue(l), l * (l + 2));
  // mu = eta: printed form agrees outright; otherwise up to x -> pi - x
  for (auto [mu, eta] : {std::pair{q(2), q(2)}, {q(3, 2), q(3, 2)}, {q(3, 2), q(5, 2)}, {q(1, 3), q(4)}}) {
    const SchrodingerSystem sys = poschl_teller_preset(mu, eta);
    const Real m = to_floating<Real>(mu), e = to_floating<Real>(eta);
    for (Real x : interior_grid(sys, 200)) {
      const Real v = potential_at(sys, 0, x);
      const Real scale = std::max<Real>(1, std::fabs(v));
      EXPECT_LE(std::fabs(v - printed_pt_potential(m, e, std::numbers::pi_v<Real> - x)), 1e-10L * scale);
      if (mu == eta) {
        EXPECT_LE(std::fabs(v - printed_pt_potential(m, e, x)), 1e-10L * scale);
        EXPECT_LE(std::fabs(v - potential_at(sys, 0, std::numbers::pi_v<Real> - x)), 1e-10L * scale);
      }
    }
  }
  EXPECT_THROW(poschl_teller_preset(0, 1), std::invalid_argument);
  EXPECT_THROW(poschl_teller_preset(1, q(-1, 2)), std::invalid_argument);
}

TEST(PoschlTeller, WavefunctionsAreSines) {
  const SchrodingerSystem one = poschl_teller_preset(1, 1);
  const std::vector<Real> grid = interior_grid(one, 300);
  for (unsigned l = 0; l <= 5; ++l) {
    const std::vector<Real> psi = wavefunction(one, l, 0, grid);
    std::vector<Real> sines;
    for (Real x : grid) sines.push_back(std::sin((l + 1) * x));
    const Real a = max_abs(psi), b = max_abs(sines);
    const Real orient = (psi[0] > 0) == (sines[0] > 0) ? 1 : -1;
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(static_cast<double>(psi[i] / a), static_cast<double>(orient * sines[i] / b), 1e-8);
  }
}

TEST(Wavefunction, HermiteGroundStateIsGaussian) {
  const SchrodingerSystem sys = make_system(presets::hermite());
  for (Real x = -4; x <= 4; x += 0.25L)
    EXPECT_NEAR(static_cast<double>(psi_derivatives(sys, 0, 0, x).value), static_cast<double>(std::exp(-x * x / 2)), 1e-15);
}

TEST(Wavefunction, MatchesPolynomialTimesKappa) {
  // Psi(x(s)) = sqrt(kappa rho) Phi_{l,m}(s)
  for (const SchrodingerSystem &sys : systems()) {
    const Family &f = sys.family;
    for (Real x : interior_grid(sys, 20)) {
      const Real s = sys.map.s(x);
      const Real kappa = std::sqrt(f.sigma()(s));
      const Real expect = std::sqrt(kappa * f.weight()(s)) * associated_function(f, 3, 1).value(s);
      EXPECT_LE(std::fabs(psi_derivatives(sys, 3, 1, x).value - expect), 1e-12L * std::max<Real>(1, std::fabs(expect))) << f.name();
    }
  }
}

TEST(Wavefunction, Errors) {
  const SchrodingerSystem sys = make_system(presets::legendre());
  EXPECT_THROW(wavefunction(sys, 1, 2, {1.0L}), std::out_of_range);
  EXPECT_THROW(wavefunction(sys, 2, 1, {-0.5L}), domain_error);
  EXPECT_THROW(superpotential(sys, 0, {0.0L}), domain_error);
  EXPECT_THROW(potential(sys, 0, {4.0L}), domain_error);
}

TEST(Schrodinger, RiccatiGroundStateAndPartnerConsistency) {
  for (const SchrodingerSystem &sys : systems())
    for (unsigned m = 0; m <= 3; ++m)
      for (Real x : residual_grid(sys, 41)) {
        const Real w = superpotential_at(sys, m, x), dw = superpotential_derivative_at(sys, m, x);
        const Real v = potential_at(sys, m, x);
        const Real scale = std::max<Real>({1, std::fabs(v), w * w});
        const Real lambda_m = to_floating<Real>(sys.family.eigenvalue(m));
        EXPECT_LE(std::fabs(v - lambda_m - (w * w - sys.sign() * dw)), 1e-8L * scale);
        // numerical derivative cross-check of the analytic dW/dx
        const Real h = 1e-4L;
        const Real fd = (superpotential_at(sys, m, x + h) - superpotential_at(sys, m, x - h)) / (2 * h);
        EXPECT_LE(std::fabs(fd - dw), 1e-6L * std::max<Real>(1, std::fabs(dw))) << sys.family.name();
        // ground state: W = -sign Psi'/Psi, V = Psi''/Psi + lambda
        EXPECT_LE(std::fabs(ground_state_superpotential_at(sys, m, x) - w), 1e-8L * std::max<Real>(1, std::fabs(w))) << sys.family.name();
        EXPECT_LE(std::fabs(ground_state_potential_at(sys, m, x) - v), 1e-8L * scale) << sys.family.name() << " m=" << m;
        // V_{m+1} from W_m and from W_{m+1}
        EXPECT_LE(std::fabs(partner_potential_at(sys, m + 1, x) - potential_at(sys, m + 1, x)),
                  1e-8L * std::max<Real>(1, std::fabs(potential_at(sys, m + 1, x))));
      }
}

TEST(Schrodinger, ResidualExamples) {
  const SchrodingerSystem one = poschl_teller_preset(1, 1);
  const std::vector<Real> grid = interior_grid(one, 200);
  const Real r = schrodinger_residual(one, 2, 0, 1e-3L, std::vector<Real>(grid.begin() + 2, grid.end() - 2));
  EXPECT_LE(r, 1e-4L * max_abs(wavefunction(one, 2, 0, grid)));
  const SchrodingerSystem her = make_system(presets::hermite());
  EXPECT_LE(schrodinger_residual(her, 1, 0, 1e-3L), 1e-4L * max_abs(wavefunction(her, 1, 0, residual_grid(her))));
  EXPECT_THROW(schrodinger_residual(one, 2, 0, 1e-2L, {0.01L}), domain_error);
}

TEST(Schrodinger, ResidualConvergesAtSecondOrder) {
  for (const SchrodingerSystem &sys : systems())
    for (unsigned l = 0; l <= 4; ++l)
      for (unsigned m = 0; m <= std::min(l, 2u); ++m) {
        const Real coarse = schrodinger_residual(sys, l, m, 1e-2L);
        const Real fine = schrodinger_residual(sys, l, m, 5e-3L);
        const Real ratio = coarse / fine;
        EXPECT_GE(ratio, 3.6L) << sys.family.name() << " l=" << l << " m=" << m;
        EXPECT_LE(ratio, 4.4L) << sys.family.name() << " l=" << l << " m=" << m;
      }
}

TEST(Schrodinger, CalligraphicLadder) {
  for (const SchrodingerSystem &sys : systems()) {
    const Family &f = sys.family;
    const std::vector<Real> grid = residual_grid(sys, 31);
    for (unsigned l = 0; l <= 5; ++l) {
      const auto ground = apply_calA(sys, l, CalDirection::lower, wave_samples(sys, l, l, grid));
      const Real gscale = max_abs(wavefunction(sys, l, l, grid));
      for (Real v : ground) EXPECT_LE(std::fabs(v), 1e-8L * gscale) << f.name();
      for (unsigned m = 0; m < l; ++m) {
        const std::vector<Real> lower = apply_calA(sys, m, CalDirection::lower, wave_samples(sys, l, m, grid));
        const std::vector<Real> up = wavefunction(sys, l, m + 1, grid);
        const Real uscale = max_abs(up);
        for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_LE(std::fabs(lower[i] - up[i]), 1e-8L * uscale) << f.name();
        const std::vector<Real> raise = apply_calA(sys, m, CalDirection::raise, wave_samples(sys, l, m + 1, grid));
        const std::vector<Real> here = wavefunction(sys, l, m, grid);
        const Real gap = to_floating<Real>(f.eigenvalue(l) - f.eigenvalue(m));
        const Real hscale = gap * max_abs(here);
        for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_LE(std::fabs(raise[i] - gap * here[i]), 1e-8L * hscale) << f.name();
      }
    }
  }
  // (-d/dx + cot x) sin x = 0
  const SchrodingerSystem one = poschl_teller_preset(1, 1);
  for (Real x : interior_grid(one, 40)) {
    const WaveSample s{x, std::sin(x), std::cos(x)};
    EXPECT_NEAR(static_cast<double>(apply_calA(one, 0, CalDirection::lower, {s})[0]), 0, 1e-15);
  }
}

TEST(Schrodinger, OrthonormalityTransfers) {
  for (const SchrodingerSystem &sys : systems()) {
    const Family &f = sys.family;
    auto [lo, hi] = sys.map.x_domain();
    const QuadratureRule wide = gauss_rule(f, 80);
    if (!std::isfinite(lo)) lo = std::min(sys.map.x_of_s(wide.nodes.front()), sys.map.x_of_s(wide.nodes.back()));
    if (!std::isfinite(hi)) hi = std::max(sys.map.x_of_s(wide.nodes.front()), sys.map.x_of_s(wide.nodes.back()));
    const unsigned n = 40000;
    const Real h = (hi - lo) / n;
    std::vector<Real> xs(n);
    for (unsigned i = 0; i < n; ++i) xs[i] = lo + (i + Real(0.5)) * h;
    for (unsigned m = 0; m <= 2; ++m) {
      std::vector<std::vector<Real>> psi;
      for (unsigned l = m; l <= 5; ++l) psi.push_back(wavefunction(sys, l, m, xs));
      for (unsigned l = m; l <= 5; ++l)
        for (unsigned k = l; k <= 5; ++k) {
          Real acc = 0;
          for (unsigned i = 0; i < n; ++i) acc += psi[l - m][i] * psi[k - m][i];
          acc *= h;
          const HalfPowerFunction u = associated_function(f, l, m).value, v = associated_function(f, k, m).value;
          const Real expect = inner_product(f, u, v);
          const Real scale = std::sqrt(inner_product(f, u, u) * inner_product(f, v, v));
          EXPECT_LE(std::fabs(acc - expect), 1e-6L * scale) << f.name() << " l=" << l << " k=" << k << " m=" << m;
        }
    }
  }
}

TEST(Schrodinger, CsvEmitter) {
  std::ostringstream os;
  write_columns_csv(os, {"x", "psi"}, {{0.5L, 1.0L}, {1.0L / 3, -2.0L}});
  EXPECT_EQ(os.str(), "x,psi\n0.5,0.33333333333333331\n1,-2\n");
}
