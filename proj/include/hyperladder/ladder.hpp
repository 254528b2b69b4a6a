#ifndef HYPERLADDER_LADDER_HPP
#define HYPERLADDER_LADDER_HPP

#include "family.hpp"
#include "half_power.hpp"
#include "quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace hyperladder {

/// Phi_{l,m} = kappa^m * Phi_l^(m), kappa = sqrt(sigma), held exactly as
/// (Phi_l^(m), halfpower m).
struct AssociatedFunction {
  unsigned l = 0;
  unsigned m = 0;
  HalfPowerFunction value;
};

namespace detail {

inline void check_triangle(unsigned l, unsigned m, const char *what) {
  if (m > l)
    throw std::out_of_range(std::string(what) + ": m = " + std::to_string(m) + " exceeds l = " + std::to_string(l));
}

inline void check_halfpower(const HalfPowerFunction &u, unsigned expected, const char *op, unsigned m) {
  if (!u.is_zero() && u.halfpower() != expected)
    throw domain_error(std::string(op) + " with m = " + std::to_string(m) + " expects sigma^(" +
                       std::to_string(expected) + "/2), got sigma^(" + std::to_string(u.halfpower()) + "/2)");
}

} // namespace detail

inline AssociatedFunction associated_function(const Family &f, unsigned l, unsigned m) {
  detail::check_triangle(l, m, "associated_function");
  return {l, m, HalfPowerFunction(f.classical_polynomial(l).derivative(m), m, f.sigma())};
}

inline HalfPowerFunction zero_function(const Family &f, unsigned halfpower) {
  return HalfPowerFunction(Polynomial{}, halfpower, f.sigma());
}

/// A_m = kappa d/ds - m kappa'. On P sigma^(m/2) it reduces to P' sigma^((m+1)/2).
inline HalfPowerFunction apply_A(const Family &f, unsigned m, const HalfPowerFunction &u) {
  detail::check_halfpower(u, m, "apply_A", m);
  return HalfPowerFunction(u.poly().derivative(), m + 1, f.sigma());
}

/// A_m^+ = -kappa d/ds - tau/kappa - (m-1) kappa'. On Q sigma^((m+1)/2) it
/// reduces to (-sigma Q' - tau Q - m sigma' Q) sigma^(m/2).
inline HalfPowerFunction apply_A_plus(const Family &f, unsigned m, const HalfPowerFunction &u) {
  detail::check_halfpower(u, m + 1, "apply_A_plus", m);
  const Polynomial &q = u.poly();
  const Polynomial p = -(f.sigma() * q.derivative()) - f.tau() * q - f.sigma().derivative() * q * Rational(m);
  return HalfPowerFunction(p, m, f.sigma());
}

/// H_m = A_m^+ A_m + lambda_m.
inline HalfPowerFunction apply_H(const Family &f, unsigned m, const HalfPowerFunction &u) {
  detail::check_halfpower(u, m, "apply_H", m);
  const HalfPowerFunction au = apply_A(f, m, u);
  return apply_A_plus(f, m, au) + u.scaled(f.eigenvalue(m));
}

/// The second-order expression for H_m applied to u, evaluated at an interior
/// point s (sigma(s) > 0). Used only to cross-check apply_H.
inline Real explicit_H(const Family &f, unsigned m, const HalfPowerFunction &u, Real s) {
  const FloatPolynomial<Real> sig(f.sigma()), dsig(f.sigma().derivative()), tau(f.tau());
  const FloatPolynomial<Real> p(u.poly()), dp(u.poly().derivative()), ddp(u.poly().derivative(2));
  const Real sg = sig(s), sg1 = dsig(s), sg2 = to_floating<Real>(f.sigma_second());
  const Real t = tau(s), t1 = to_floating<Real>(f.tau_slope());
  // g = sigma^(k/2) and its first two derivatives
  const Real k = u.halfpower();
  const Real g = std::pow(sg, k / 2);
  const Real g1 = k / 2 * sg1 * std::pow(sg, k / 2 - 1);
  const Real g2 = k / 2 * (sg2 * std::pow(sg, k / 2 - 1) + (k / 2 - 1) * sg1 * sg1 * std::pow(sg, k / 2 - 2));
  const Real val = p(s) * g;
  const Real d1 = dp(s) * g + p(s) * g1;
  const Real d2 = ddp(s) * g + 2 * dp(s) * g1 + p(s) * g2;
  const Real mm = m;
  const Real potential = mm * (mm - 2) / 4 * sg1 * sg1 / sg + mm * t / 2 * sg1 / sg - mm * (mm - 2) / 2 * sg2 - mm * t1;
  return -sg * d2 - t * d1 + potential * val;
}

/// Phi_{l,m+1} + (tau/kappa + 2(m-1)kappa') Phi_{l,m} + (lambda_l - lambda_{m-1}) Phi_{l,m-1},
/// for 1 <= m <= l (the first term is absent when m = l). Exactly zero when
/// the recurrence holds.
inline HalfPowerFunction three_term_check(const Family &f, unsigned l, unsigned m) {
  if (m < 1 || m > l)
    throw std::out_of_range("three_term_check: need 1 <= m <= l, got l = " + std::to_string(l) +
                            ", m = " + std::to_string(m));
  const HalfPowerFunction cur = associated_function(f, l, m).value;
  // (tau/kappa + (m-1) sigma'/kappa) * P sigma^(m/2) = (tau + (m-1) sigma') P sigma^((m-1)/2)
  const Polynomial middle_factor = f.tau() + f.sigma().derivative() * Rational(m - 1);
  HalfPowerFunction sum(middle_factor * cur.poly(), m - 1, f.sigma());
  sum = sum + associated_function(f, l, m - 1).value.scaled(f.eigenvalue(l) - f.eigenvalue(m - 1));
  if (m < l) sum = sum + associated_function(f, l, m + 1).value;
  return sum;
}

/// ||Phi_{l,m}||^2 = prod_{j<m} (lambda_l - lambda_j) * ||Phi_{l,0}||^2, base by quadrature.
inline Real norm_squared(const Family &f, unsigned l, unsigned m) {
  detail::check_triangle(l, m, "norm_squared");
  const HalfPowerFunction base = associated_function(f, l, 0).value;
  Rational factor = 1;
  for (unsigned j = 0; j < m; ++j) factor *= f.eigenvalue(l) - f.eigenvalue(j);
  return to_floating<Real>(factor) * inner_product(f, base, base);
}

/// ||Phi_{l,m}||^2 by direct quadrature.
inline Real norm_squared_direct(const Family &f, unsigned l, unsigned m) {
  const HalfPowerFunction u = associated_function(f, l, m).value;
  return inner_product(f, u, u);
}

struct IntertwiningResult {
  bool lowering = false; // H_m A_m^+ = A_m^+ H_{m+1} on Phi_{l,m+1}
  bool raising = false;  // A_m H_m = H_{m+1} A_m on Phi_{l,m}
};

inline IntertwiningResult intertwining_check(const Family &f, unsigned l, unsigned m) {
  if (m >= l)
    throw std::out_of_range("intertwining_check: need m < l, got l = " + std::to_string(l) +
                            ", m = " + std::to_string(m));
  const HalfPowerFunction up = associated_function(f, l, m + 1).value;
  const HalfPowerFunction here = associated_function(f, l, m).value;
  IntertwiningResult r;
  r.lowering = hp_equal(apply_H(f, m, apply_A_plus(f, m, up)), apply_A_plus(f, m, apply_H(f, m + 1, up)));
  r.raising = hp_equal(apply_A(f, m, apply_H(f, m, here)), apply_H(f, m + 1, apply_A(f, m, here)));
  return r;
}

/// A_m (raise) or A_m^+ (lower) bound to a family.
struct LadderOperator {
  enum class Direction { raise, lower };

  const Family *family = nullptr;
  unsigned m = 0;
  Direction direction = Direction::raise;

  HalfPowerFunction operator()(const HalfPowerFunction &u) const {
    return direction == Direction::raise ? apply_A(*family, m, u) : apply_A_plus(*family, m, u);
  }
};

} // namespace hyperladder

#endif
