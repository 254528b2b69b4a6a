#ifndef HYPERLADDER_SCHRODINGER_HPP
#define HYPERLADDER_SCHRODINGER_HPP

#include "coordinate_map.hpp"
#include "family.hpp"
#include "ladder.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperladder {

/// A family together with its change of variable s = s(x).
struct SchrodingerSystem {
  SchrodingerSystem(const Family &f, CoordinateMap m)
      : family(f), map(std::move(m)), tau(f.tau()), dsigma(f.sigma().derivative()),
        tau1(to_floating<Real>(f.tau_slope())), sigma2(to_floating<Real>(f.sigma_second())), weight(f.weight()) {}

  Family family;
  CoordinateMap map;
  // rounded copies for pointwise evaluation
  FloatPolynomial<Real> tau, dsigma;
  Real tau1, sigma2;
  FloatWeight weight;

  int sign() const { return map.sign(); }
};

inline SchrodingerSystem make_system(const Family &f, std::optional<int> sign = std::nullopt,
                                     std::optional<Anchor> anchor = std::nullopt) {
  return SchrodingerSystem(f, CoordinateMap(f, sign.value_or(default_sign(f)), anchor));
}

/// Jacobi family with alpha = mu - 1/2, beta = eta - 1/2 under s = cos x.
inline SchrodingerSystem poschl_teller_preset(const Rational &mu, const Rational &eta) {
  if (mu <= 0 || eta <= 0)
    throw std::invalid_argument("poschl_teller: mu and eta must be positive, got mu = " + to_string(mu) +
                                ", eta = " + to_string(eta));
  const Rational half(1, 2);
  Family f = presets::jacobi(mu - half, eta - half);
  return make_system(f, -1);
}

struct PsiDerivatives {
  Real value, d1, d2;
};

namespace detail {

/// Point data at x: s, kappa, sigma = kappa^2, sigma'.
struct MapPoint {
  Real s, kappa, sigma, dsigma;
};

inline MapPoint map_point(const SchrodingerSystem &sys, Real x) {
  const auto [s, k] = sys.map.state(x);
  return {s, k, k * k, sys.dsigma(s)};
}

/// g_m = tau/2 + (2m-1) sigma'/4 and g_m'.
inline std::pair<Real, Real> g_of(const SchrodingerSystem &sys, unsigned m, Real s) {
  const Real c = (2 * static_cast<Real>(m) - 1) / 4;
  return {sys.tau(s) / 2 + c * sys.dsigma(s), sys.tau1 / 2 + c * sys.sigma2};
}

inline void check_grid(const SchrodingerSystem &sys, const std::vector<Real> &grid) {
  for (Real x : grid)
    if (!sys.map.contains(x))
      throw domain_error("grid point x = " + std::to_string(static_cast<double>(x)) + " is not interior to the x-domain");
}

} // namespace detail

/// Psi_{l,m}(x) = sqrt(kappa rho) Phi_{l,m}(s(x)) and its first two x-derivatives,
/// by the chain rule through s(x).
class WaveEvaluator {
public:
  WaveEvaluator(const SchrodingerSystem &sys, unsigned l, unsigned m) : sys_(&sys), m_(m) {
    detail::check_triangle(l, m, "wavefunction");
    const Polynomial p = sys.family.classical_polynomial(l).derivative(m);
    p0_ = FloatPolynomial<Real>(p);
    p1_ = FloatPolynomial<Real>(p.derivative());
    p2_ = FloatPolynomial<Real>(p.derivative(2));
  }

  PsiDerivatives operator()(Real x) const {
    const detail::MapPoint pt = detail::map_point(*sys_, x);
    const Real P = p0_(pt.s), P1 = p1_(pt.s), P2 = p2_(pt.s);
    // G = sigma^((2m+1)/4) rho^(1/2), G'/G = h = g_m / sigma
    const Real G = std::exp((2 * static_cast<Real>(m_) + 1) / 2 * std::log(pt.kappa) + sys_->weight.log_value(pt.s) / 2);
    const auto [g, g1] = detail::g_of(*sys_, m_, pt.s);
    const Real h = g / pt.sigma;
    const Real h1 = (g1 * pt.sigma - g * pt.dsigma) / (pt.sigma * pt.sigma);
    const Real first = P1 + P * h;
    return {P * G, sys_->sign() * pt.kappa * G * first,
            G * (pt.sigma * (P2 + 2 * P1 * h + P * (h1 + h * h)) + pt.dsigma / 2 * first)};
  }

private:
  const SchrodingerSystem *sys_;
  unsigned m_;
  FloatPolynomial<Real> p0_, p1_, p2_;
};

inline PsiDerivatives psi_derivatives(const SchrodingerSystem &sys, unsigned l, unsigned m, Real x) {
  return WaveEvaluator(sys, l, m)(x);
}

inline std::vector<Real> wavefunction(const SchrodingerSystem &sys, unsigned l, unsigned m, const std::vector<Real> &grid) {
  detail::check_triangle(l, m, "wavefunction");
  detail::check_grid(sys, grid);
  const WaveEvaluator psi(sys, l, m);
  std::vector<Real> out;
  out.reserve(grid.size());
  for (Real x : grid) out.push_back(psi(x).value);
  return out;
}

/// W_m = -tau/(2 kappa) - (2m-1) sigma'/(4 kappa) = -g_m/kappa.
inline Real superpotential_at(const SchrodingerSystem &sys, unsigned m, Real x) {
  const detail::MapPoint pt = detail::map_point(sys, x);
  return -detail::g_of(sys, m, pt.s).first / pt.kappa;
}

/// dW_m/dx = sign * (-g_m' + g_m sigma'/(2 sigma)).
inline Real superpotential_derivative_at(const SchrodingerSystem &sys, unsigned m, Real x) {
  const detail::MapPoint pt = detail::map_point(sys, x);
  const auto [g, g1] = detail::g_of(sys, m, pt.s);
  return sys.sign() * (-g1 + g * pt.dsigma / (2 * pt.sigma));
}

inline std::vector<Real> superpotential(const SchrodingerSystem &sys, unsigned m, const std::vector<Real> &grid) {
  detail::check_grid(sys, grid);
  std::vector<Real> out;
  out.reserve(grid.size());
  for (Real x : grid) out.push_back(superpotential_at(sys, m, x));
  return out;
}

/// V_m = lambda_m + W_m^2 - sign dW_m/dx.
inline Real potential_at(const SchrodingerSystem &sys, unsigned m, Real x) {
  const Real w = superpotential_at(sys, m, x);
  return to_floating<Real>(sys.family.eigenvalue(m)) + w * w - sys.sign() * superpotential_derivative_at(sys, m, x);
}

/// V_m from the partner side: lambda_{m-1} + W_{m-1}^2 + sign dW_{m-1}/dx (m >= 1).
inline Real partner_potential_at(const SchrodingerSystem &sys, unsigned m, Real x) {
  if (m == 0) throw std::out_of_range("partner_potential: needs m >= 1");
  const Real w = superpotential_at(sys, m - 1, x);
  return to_floating<Real>(sys.family.eigenvalue(m - 1)) + w * w + sys.sign() * superpotential_derivative_at(sys, m - 1, x);
}

/// V_m = Psi_{m,m}''/Psi_{m,m} + lambda_m.
inline Real ground_state_potential_at(const SchrodingerSystem &sys, unsigned m, Real x) {
  const PsiDerivatives d = psi_derivatives(sys, m, m, x);
  return d.d2 / d.value + to_floating<Real>(sys.family.eigenvalue(m));
}

/// W_m = -sign Psi_{m,m}'/Psi_{m,m}.
inline Real ground_state_superpotential_at(const SchrodingerSystem &sys, unsigned m, Real x) {
  const PsiDerivatives d = psi_derivatives(sys, m, m, x);
  return -sys.sign() * d.d1 / d.value;
}

inline std::vector<Real> potential(const SchrodingerSystem &sys, unsigned m, const std::vector<Real> &grid) {
  detail::check_grid(sys, grid);
  std::vector<Real> out;
  out.reserve(grid.size());
  for (Real x : grid) out.push_back(potential_at(sys, m, x));
  return out;
}

/// n points spread uniformly over the x-images of the extreme 20-point Gauss nodes.
inline std::vector<Real> residual_grid(const SchrodingerSystem &sys, unsigned n = 101) {
  const auto [lo, hi] = sys.map.node_window(sys.family);
  std::vector<Real> g(n);
  for (unsigned i = 0; i < n; ++i) g[i] = n == 1 ? (lo + hi) / 2 : lo + (hi - lo) * i / (n - 1);
  return g;
}

/// n points strictly inside the x-domain; infinite ends are cut at the node window.
inline std::vector<Real> interior_grid(const SchrodingerSystem &sys, unsigned n) {
  auto [lo, hi] = sys.map.x_domain();
  const auto [nlo, nhi] = sys.map.node_window(sys.family);
  if (!std::isfinite(lo)) lo = nlo;
  if (!std::isfinite(hi)) hi = nhi;
  std::vector<Real> g(n);
  for (unsigned i = 0; i < n; ++i) g[i] = lo + (hi - lo) * (i + 1) / (n + 1);
  return g;
}

/// max |-Psi'' + V_m Psi - lambda_l Psi| with Psi'' from the central difference of step h.
inline Real schrodinger_residual(const SchrodingerSystem &sys, unsigned l, unsigned m, Real h, const std::vector<Real> &grid) {
  detail::check_triangle(l, m, "schrodinger_residual");
  if (!(h > 0)) throw std::invalid_argument("schrodinger_residual: h must be positive");
  const auto [lo, hi] = sys.map.x_domain();
  const Real guard = std::max<Real>(1e-6L, 2 * h);
  for (Real x : grid)
    if (!(x - lo >= guard && hi - x >= guard))
      throw domain_error("schrodinger_residual: grid point x = " + std::to_string(static_cast<double>(x)) +
                         " is closer than 2h to the x-domain boundary");
  const Real lambda_l = to_floating<Real>(sys.family.eigenvalue(l));
  const WaveEvaluator wave(sys, l, m);
  Real worst = 0;
  for (Real x : grid) {
    const Real psi = wave(x).value;
    const Real d2 = (wave(x + h).value - 2 * psi + wave(x - h).value) / (h * h);
    worst = std::max(worst, std::fabs(-d2 + potential_at(sys, m, x) * psi - lambda_l * psi));
  }
  return worst;
}

inline Real schrodinger_residual(const SchrodingerSystem &sys, unsigned l, unsigned m, Real h) {
  return schrodinger_residual(sys, l, m, h, residual_grid(sys));
}

struct WaveSample {
  Real x, value, derivative;
};

inline std::vector<WaveSample> wave_samples(const SchrodingerSystem &sys, unsigned l, unsigned m, const std::vector<Real> &grid) {
  detail::check_grid(sys, grid);
  const WaveEvaluator psi(sys, l, m);
  std::vector<WaveSample> out;
  out.reserve(grid.size());
  for (Real x : grid) {
    const PsiDerivatives d = psi(x);
    out.push_back({x, d.value, d.d1});
  }
  return out;
}

enum class CalDirection { lower, raise };

/// calA_m = sign d/dx + W_m (lower) and calA_m^+ = -sign d/dx + W_m (raise).
inline std::vector<Real> apply_calA(const SchrodingerSystem &sys, unsigned m, CalDirection dir,
                                    const std::vector<WaveSample> &samples) {
  const Real d = dir == CalDirection::lower ? sys.sign() : -sys.sign();
  std::vector<Real> out;
  out.reserve(samples.size());
  for (const WaveSample &w : samples) out.push_back(d * w.derivative + superpotential_at(sys, m, w.x) * w.value);
  return out;
}

/// CSV with a header row and 17-significant-digit columns.
inline void write_columns_csv(std::ostream &os, const std::vector<std::string> &names,
                              const std::vector<std::vector<Real>> &columns) {
  for (std::size_t j = 0; j < names.size(); ++j) os << (j ? "," : "") << names[j];
  os << "\n";
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  char buf[40];
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(columns[j][i]));
      os << (j ? "," : "") << buf;
    }
    os << "\n";
  }
}

} // namespace hyperladder

#endif
