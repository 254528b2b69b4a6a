#ifndef HYPERLADDER_QUADRATURE_HPP
#define HYPERLADDER_QUADRATURE_HPP

#include "family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hyperladder {

struct QuadratureRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
  int exact_degree = 0;

  template <typename F> Real integrate(F &&f) const {
    Real acc = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }

  /// "node,weight" lines, 17 significant digits.
  void write_csv(std::ostream &os) const {
    char buf[96];
    os << "node,weight\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", static_cast<double>(nodes[i]),
                    static_cast<double>(weights[i]));
      os << buf;
    }
  }
};

/// Monic three-term recurrence P_{k+1} = (s - alpha_k) P_k - beta_k P_{k-1},
/// read off exactly from the classical polynomials.
struct RecurrenceCoefficients {
  std::vector<Rational> alpha; // k = 0..n-1
  std::vector<Rational> beta;  // k = 0..n-1, beta[0] unused (0)
};

inline RecurrenceCoefficients recurrence_coefficients(const Family &f, unsigned n) {
  std::vector<Polynomial> phi;
  phi.reserve(n + 1);
  for (unsigned k = 0; k <= n; ++k) phi.push_back(f.classical_polynomial(k));
  RecurrenceCoefficients rc;
  rc.alpha.resize(n);
  rc.beta.assign(n, Rational(0));
  for (unsigned k = 0; k < n; ++k) {
    // s^k coefficient of P_{k+1} - s P_k equals -alpha_k
    rc.alpha[k] = (k > 0 ? phi[k].coeff(k - 1) : Rational(0)) - phi[k + 1].coeff(k);
    if (k > 0) {
      // s^(k-1) coefficient of P_{k+1} - (s - alpha_k) P_k equals -beta_k
      const Rational c_km2 = k >= 2 ? phi[k].coeff(k - 2) : Rational(0);
      rc.beta[k] = c_km2 - rc.alpha[k] * phi[k].coeff(k - 1) - phi[k + 1].coeff(k - 1);
    }
  }
  return rc;
}

namespace detail {

struct Recurrence {
  std::vector<Real> a, b;

  // Values p_0..p_n at x.
  void values(Real x, std::vector<Real> &p) const {
    const std::size_t n = a.size();
    p.assign(n + 1, 0);
    p[0] = 1;
    if (n == 0) return;
    p[1] = x - a[0];
    for (std::size_t k = 1; k < n; ++k) p[k + 1] = (x - a[k]) * p[k] - b[k] * p[k - 1];
  }

  // p_n(x) and p_n'(x).
  std::pair<Real, Real> top(Real x) const {
    Real p0 = 1, p1 = x - a[0], d0 = 0, d1 = 1;
    for (std::size_t k = 1; k < a.size(); ++k) {
      const Real p2 = (x - a[k]) * p1 - b[k] * p0;
      const Real d2 = p1 + (x - a[k]) * d1 - b[k] * d0;
      p0 = p1, p1 = p2, d0 = d1, d1 = d2;
    }
    return {p1, d1};
  }

  // Number of zeros of p_n greater than x (sign changes of the Sturm
  // sequence). An exact zero anywhere in the sequence nudges x upwards.
  std::size_t zeros_above(Real x) const {
    std::vector<Real> p;
    for (;;) {
      values(x, p);
      if (std::find(p.begin() + 1, p.end(), Real(0)) == p.end()) break;
      x += 4 * std::numeric_limits<Real>::epsilon() * std::max<Real>(1, std::fabs(x));
    }
    std::size_t changes = 0;
    for (std::size_t k = 1; k < p.size(); ++k)
      if ((p[k] > 0) != (p[k - 1] > 0)) ++changes;
    return changes;
  }
};

} // namespace detail

class quadrature_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// n-point Gauss rule for the family's weight. Nodes are the zeros of the
/// monic P_n (Sturm-count bisection, then safeguarded Newton); weights are
/// the Christoffel numbers 1 / sum_k p_k(x)^2 / h_k with h_k = m0 * prod beta.
inline QuadratureRule gauss_rule(const Family &f, unsigned n) {
  if (n == 0) throw std::invalid_argument("gauss_rule: n must be >= 1");
  const RecurrenceCoefficients rc = recurrence_coefficients(f, n);
  detail::Recurrence rec;
  for (unsigned k = 0; k < n; ++k) {
    rec.a.push_back(to_floating<Real>(rc.alpha[k]));
    rec.b.push_back(to_floating<Real>(rc.beta[k]));
    if (k > 0 && rc.beta[k] <= 0) throw quadrature_error("non-positive recurrence coefficient beta_" + std::to_string(k));
  }

  // Gershgorin bound on the Jacobi matrix, clipped to the interval.
  Real lo = std::numeric_limits<Real>::infinity(), hi = -lo;
  for (unsigned k = 0; k < n; ++k) {
    const Real off = (k > 0 ? std::sqrt(rec.b[k]) : 0) + (k + 1 < n ? std::sqrt(rec.b[k + 1]) : 0);
    lo = std::min(lo, rec.a[k] - off);
    hi = std::max(hi, rec.a[k] + off);
  }
  const Real pad = 1e-6L * (1 + std::fabs(hi - lo));
  lo -= pad, hi += pad;
  if (f.interval().a.is_finite()) lo = std::max(lo, f.interval().a.to_real());
  if (f.interval().b.is_finite()) hi = std::min(hi, f.interval().b.to_real());

  QuadratureRule rule;
  rule.exact_degree = static_cast<int>(2 * n - 1);
  rule.nodes.resize(n);
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (unsigned i = 0; i < n; ++i) {
    // Bracket the i-th smallest zero alone: zeros_above(left) == n - i, zeros_above(right) == n - i - 1.
    Real left = lo, right = hi;
    for (int it = 0; it < 300 && !(rec.zeros_above(left) == n - i && rec.zeros_above(right) == n - i - 1); ++it) {
      const Real mid = (left + right) / 2;
      if (rec.zeros_above(mid) >= n - i)
        left = mid;
      else
        right = mid;
    }
    // Safeguarded Newton; falls back to bisection whenever a step leaves the bracket.
    // (left, right] holds one zero; an exact zero at left is the previous node.
    Real f_left = rec.top(left).first;
    while (f_left == 0) {
      left += 4 * eps * std::max<Real>(1, std::fabs(left));
      f_left = rec.top(left).first;
    }
    Real x = (left + right) / 2;
    bool converged = false;
    for (int it = 0; it < 300 && !converged; ++it) {
      const auto [p, dp] = rec.top(x);
      if (p == 0) {
        converged = true;
        break;
      }
      if ((p > 0) == (f_left > 0))
        left = x, f_left = p;
      else
        right = x;
      Real next = x - p / dp;
      if (!(next > left && next < right)) next = (left + right) / 2;
      const Real tol = 16 * eps * std::max<Real>(1, std::fabs(x));
      const Real step = std::fabs(next - x);
      x = next;
      if (step <= tol || right - left <= tol) {
        converged = true;
        break;
      }
    }
    if (!converged) throw quadrature_error("root finder did not converge for node " + std::to_string(i));
    rule.nodes[i] = x;
  }

  // h_k = m0 * beta_1 ... beta_k
  std::vector<Real> h(n);
  h[0] = f.zeroth_moment();
  Rational prod = 1;
  for (unsigned k = 1; k < n; ++k) {
    prod *= rc.beta[k];
    h[k] = h[0] * to_floating<Real>(prod);
  }
  rule.weights.resize(n);
  std::vector<Real> p;
  for (unsigned i = 0; i < n; ++i) {
    rec.values(rule.nodes[i], p);
    Real acc = 0;
    for (unsigned k = 0; k < n; ++k) acc += p[k] * p[k] / h[k];
    rule.weights[i] = 1 / acc;
  }
  return rule;
}

/// Integral of p * rho over (a, b) from the exact moment ratios; the only
/// floating step is the final multiplication by m0.
inline Real exact_integral(const Family &f, const Polynomial &p) {
  if (p.is_zero()) return 0;
  const auto mu = f.moment_ratios(static_cast<unsigned>(p.degree()));
  Rational acc = 0;
  for (std::size_t k = 0; k < p.coefficients().size(); ++k) acc += p.coefficients()[k] * mu[k];
  return to_floating<Real>(acc) * f.zeroth_moment();
}

/// Number of Gauss points that integrate degree-d polynomials times rho exactly.
inline unsigned points_for_degree(int degree) { return static_cast<unsigned>(std::max(1, (degree + 2) / 2)); }

/// <u, v> = integral of u v rho over (a, b), by Gauss quadrature of exact degree.
inline Real inner_product(const Family &f, const HalfPowerFunction &u, const HalfPowerFunction &v) {
  if ((u.halfpower() + v.halfpower()) % 2 != 0)
    throw domain_error("inner_product: odd total half power " + std::to_string(u.halfpower() + v.halfpower()) +
                       " makes the integrand non-polynomial");
  if (!(u.sigma() == f.sigma()) || !(v.sigma() == f.sigma()))
    throw domain_error("inner_product: operand sigma differs from the family's sigma");
  if (u.is_zero() || v.is_zero()) return 0;
  const unsigned spow = (u.halfpower() + v.halfpower()) / 2;
  const int degree = u.poly().degree() + v.poly().degree() + static_cast<int>(spow) * f.sigma().degree();
  const QuadratureRule rule = gauss_rule(f, points_for_degree(degree));
  const FloatPolynomial<Real> pu(u.poly()), pv(v.poly()), sig(f.sigma());
  return rule.integrate([&](Real s) {
    Real sp = 1;
    for (unsigned i = 0; i < spow; ++i) sp *= sig(s);
    return pu(s) * pv(s) * sp;
  });
}

/// Finite window for sampling on (a, b): finite endpoints are kept, infinite
/// ones are replaced by the extreme nodes of the 20-point Gauss rule.
inline std::pair<Real, Real> sampling_window(const Family &f) {
  const auto &iv = f.interval();
  if (iv.a.is_finite() && iv.b.is_finite()) return {iv.a.to_real(), iv.b.to_real()};
  const QuadratureRule rule = gauss_rule(f, 20);
  return {iv.a.is_finite() ? iv.a.to_real() : rule.nodes.front(),
          iv.b.is_finite() ? iv.b.to_real() : rule.nodes.back()};
}

} // namespace hyperladder

#endif
