#ifndef HYPERLADDER_FAMILY_HPP
#define HYPERLADDER_FAMILY_HPP

#include "half_power.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperladder {

using Real = long double;

/// Interval endpoint: a finite rational or +-infinity.
struct Endpoint {
  enum class Kind { finite, neg_inf, pos_inf };
  Kind kind = Kind::finite;
  Rational value = 0;

  static Endpoint at(const Rational &v) { return {Kind::finite, v}; }
  static Endpoint minus_infinity() { return {Kind::neg_inf, 0}; }
  static Endpoint plus_infinity() { return {Kind::pos_inf, 0}; }

  bool is_finite() const { return kind == Kind::finite; }
  Real to_real() const {
    switch (kind) {
    case Kind::neg_inf: return -INFINITY;
    case Kind::pos_inf: return INFINITY;
    default: return to_floating<Real>(value);
    }
  }
  std::string str() const {
    switch (kind) {
    case Kind::neg_inf: return "-inf";
    case Kind::pos_inf: return "inf";
    default: return to_string(value);
    }
  }
  friend bool operator==(const Endpoint &x, const Endpoint &y) {
    return x.kind == y.kind && (x.kind != Kind::finite || x.value == y.value);
  }
};

struct Interval {
  Endpoint a, b;
};

enum class ClassTag { jacobi_like, laguerre_like, hermite_like };

inline const char *to_string(ClassTag t) {
  switch (t) {
  case ClassTag::jacobi_like: return "jacobi_like";
  case ClassTag::laguerre_like: return "laguerre_like";
  default: return "hermite_like";
  }
}

/// Why a (sigma, tau, interval) triple was rejected.
enum class Violation {
  sigma_degree,
  tau_degree,
  tau_slope_nonnegative,
  sigma_convex,
  sigma_nonpositive,
  boundary_condition,
  irrational_roots,
  malformed_interval,
};

inline const char *to_string(Violation v) {
  switch (v) {
  case Violation::sigma_degree: return "sigma_degree";
  case Violation::tau_degree: return "tau_degree";
  case Violation::tau_slope_nonnegative: return "tau_slope_nonnegative";
  case Violation::sigma_convex: return "sigma_convex";
  case Violation::sigma_nonpositive: return "sigma_nonpositive";
  case Violation::boundary_condition: return "boundary_condition";
  case Violation::irrational_roots: return "irrational_roots";
  default: return "malformed_interval";
  }
}

class family_error : public std::invalid_argument {
public:
  family_error(Violation v, const std::string &msg)
      : std::invalid_argument(std::string(to_string(v)) + ": " + msg), violation_(v) {}
  Violation violation() const { return violation_; }

private:
  Violation violation_;
};

/// One factor |s - root|^exponent, written as (s - root)^exponent when
/// `orientation` is +1 and (root - s)^exponent when it is -1, so that it is
/// positive on the family's interval.
struct RootFactor {
  Rational root;
  Rational exponent;
  int orientation = 1;
};

/// rho(s) = normalization * exp(exp_poly(s)) * prod of root factors.
struct WeightDescriptor {
  Polynomial exp_poly;
  std::vector<RootFactor> root_factors;
  double normalization = 1.0;

  Real log_value(Real s) const {
    Real acc = std::log(static_cast<Real>(normalization)) + exp_poly(s);
    for (const auto &f : root_factors) {
      const Real base = f.orientation * (s - to_floating<Real>(f.root));
      acc += to_floating<Real>(f.exponent) * std::log(base);
    }
    return acc;
  }

  Real operator()(Real s) const { return std::exp(log_value(s)); }

  /// rho'(s) / rho(s).
  Real log_derivative(Real s) const {
    Real acc = exp_poly.derivative()(s);
    for (const auto &f : root_factors) acc += to_floating<Real>(f.exponent) / (s - to_floating<Real>(f.root));
    return acc;
  }

  std::string str() const {
    std::string out;
    auto append = [&](const std::string &t) { out += out.empty() ? t : "*" + t; };
    for (const auto &f : root_factors) {
      if (f.exponent == 0) continue;
      Polynomial lin = f.orientation > 0 ? Polynomial{-f.root, 1} : Polynomial{f.root, -1};
      std::string base = "(" + lin.str() + ")";
      append(f.exponent == 1 ? base : base + "^(" + to_string(f.exponent) + ")");
    }
    if (!exp_poly.is_zero()) append("exp(" + exp_poly.str() + ")");
    return out.empty() ? "1" : out;
  }
};

/// A validated hypergeometric-type family sigma*y'' + tau*y' + lambda*y = 0
/// on (a, b), with its weight and orthogonal polynomials.
/// WeightDescriptor with every coefficient rounded once, for repeated evaluation.
class FloatWeight {
public:
  FloatWeight() = default;
  explicit FloatWeight(const WeightDescriptor &w)
      : log_norm_(std::log(static_cast<Real>(w.normalization))), exp_poly_(w.exp_poly) {
    for (const auto &f : w.root_factors)
      factors_.push_back({to_floating<Real>(f.root), to_floating<Real>(f.exponent), static_cast<Real>(f.orientation)});
  }

  Real log_value(Real s) const {
    Real acc = log_norm_ + exp_poly_(s);
    for (const auto &f : factors_) acc += f.exponent * std::log(f.orientation * (s - f.root));
    return acc;
  }

private:
  struct Factor {
    Real root, exponent, orientation;
  };
  Real log_norm_ = 0;
  FloatPolynomial<Real> exp_poly_;
  std::vector<Factor> factors_;
};

class Family {
public:
  const Polynomial &sigma() const { return sigma_; }
  const Polynomial &tau() const { return tau_; }
  const Interval &interval() const { return interval_; }
  const WeightDescriptor &weight() const { return weight_; }
  ClassTag class_tag() const { return tag_; }
  const std::string &name() const { return name_; }

  /// sigma'' (constant).
  Rational sigma_second() const { return sigma_.coeff(2) * 2; }
  /// tau' (constant).
  Rational tau_slope() const { return tau_.coeff(1); }

  /// lambda_l = -l(l-1)sigma''/2 - l tau'.
  Rational eigenvalue(unsigned l) const {
    const Rational lr(static_cast<long>(l));
    return -lr * (lr - 1) * sigma_.coeff(2) - lr * tau_slope();
  }

  /// Monic degree-l solution of sigma*P'' + tau*P' + lambda_l*P = 0, built
  /// from the downward coefficient recurrence.
  Polynomial classical_polynomial(unsigned l) const {
    std::vector<Rational> c(l + 1, Rational(0));
    c[l] = 1;
    const Rational lam_l = eigenvalue(l);
    const Rational s0 = sigma_.coeff(0), s1 = sigma_.coeff(1), t0 = tau_.coeff(0);
    for (int k = static_cast<int>(l) - 1; k >= 0; --k) {
      const std::size_t uk = static_cast<std::size_t>(k);
      const Rational gap = lam_l - eigenvalue(uk);
      if (gap == 0)
        throw std::logic_error("classical_polynomial: lambda_" + std::to_string(l) + " == lambda_" +
                               std::to_string(k) + " for an admissible family");
      Rational rhs = -(s1 * (k + 1) * k + t0 * (k + 1)) * c[uk + 1];
      if (uk + 2 <= l) rhs -= s0 * (k + 2) * (k + 1) * c[uk + 2];
      c[uk] = rhs / gap;
    }
    return Polynomial(std::move(c));
  }

  /// sigma*P'' + tau*P' + lambda*P.
  Polynomial hypergeometric_residual(const Polynomial &p, const Rational &lambda) const {
    return sigma_ * p.derivative(2) + tau_ * p.derivative() + p.scaled(lambda);
  }

  /// Exact moment ratios m_k / m_0 for k = 0..k_max, from integrating
  /// s^k (sigma*rho)' = s^k tau*rho by parts (boundary terms vanish):
  /// (tau1 + k sigma2) m_{k+1} = -(tau0 + k sigma1) m_k - k sigma0 m_{k-1}.
  std::vector<Rational> moment_ratios(unsigned k_max) const {
    std::vector<Rational> mu(k_max + 1, Rational(0));
    mu[0] = 1;
    const Rational s0 = sigma_.coeff(0), s1 = sigma_.coeff(1), s2 = sigma_.coeff(2);
    const Rational t0 = tau_.coeff(0), t1 = tau_.coeff(1);
    for (unsigned k = 0; k < k_max; ++k) {
      const long kk = static_cast<long>(k);
      Rational rhs = -(t0 + kk * s1) * mu[k];
      if (k > 0) rhs -= kk * s0 * mu[k - 1];
      mu[k + 1] = rhs / (t1 + kk * s2);
    }
    return mu;
  }

  /// Zeroth moment, integral of rho over (a, b), in closed form per class.
  Real zeroth_moment() const {
    switch (tag_) {
    case ClassTag::hermite_like: {
      // exp(q2 s^2 + q1 s) with q2 < 0
      const Real q2 = to_floating<Real>(weight_.exp_poly.coeff(2));
      const Real q1 = to_floating<Real>(weight_.exp_poly.coeff(1));
      const Real a = -q2;
      return std::sqrt(static_cast<Real>(M_PIl) / a) * std::exp(q1 * q1 / (4 * a)) * weight_.normalization;
    }
    case ClassTag::laguerre_like: {
      const auto &f = weight_.root_factors.front();
      const Real c = to_floating<Real>(weight_.exp_poly.coeff(1));
      const Real r = to_floating<Real>(f.root);
      const Real g = to_floating<Real>(f.exponent);
      return std::exp(c * r) * std::tgamma(g + 1) / std::pow(std::fabs(c), g + 1) * weight_.normalization;
    }
    default: {
      const auto &lo = weight_.root_factors[0];
      const auto &hi = weight_.root_factors[1];
      const Real A = to_floating<Real>(lo.exponent), B = to_floating<Real>(hi.exponent);
      const Real len = to_floating<Real>(hi.root - lo.root);
      const Real beta = std::exp(std::lgamma(A + 1) + std::lgamma(B + 1) - std::lgamma(A + B + 2));
      return std::pow(len, A + B + 1) * beta * weight_.normalization;
    }
    }
  }

  /// Interior test point for anchors and diagnostics.
  Rational interior_point() const {
    const auto &[a, b] = interval_;
    if (a.is_finite() && b.is_finite()) return (a.value + b.value) / 2;
    if (a.is_finite()) return a.value + 1;
    if (b.is_finite()) return b.value - 1;
    // hermite_like: centre of the Gaussian
    const Rational q2 = weight_.exp_poly.coeff(2), q1 = weight_.exp_poly.coeff(1);
    return -q1 / (2 * q2);
  }

  bool contains(Real s) const {
    return s > interval_.a.to_real() && s < interval_.b.to_real();
  }

  friend Family validate_family(Polynomial sigma, Polynomial tau, Interval interval, std::string name);

private:
  Polynomial sigma_, tau_;
  Interval interval_;
  WeightDescriptor weight_;
  ClassTag tag_ = ClassTag::jacobi_like;
  std::string name_;
};

namespace detail {

inline std::string interval_str(const Interval &iv) { return "(" + iv.a.str() + ", " + iv.b.str() + ")"; }

// True if (a, b) lies inside (lo, hi) where lo/hi may be infinite.
inline bool inside(const Interval &iv, const Endpoint &lo, const Endpoint &hi) {
  auto ge = [](const Endpoint &x, const Endpoint &y) { // x >= y as lower bounds
    if (y.kind == Endpoint::Kind::neg_inf) return true;
    if (x.kind == Endpoint::Kind::neg_inf) return false;
    return x.value >= y.value;
  };
  auto le = [](const Endpoint &x, const Endpoint &y) { // x <= y as upper bounds
    if (y.kind == Endpoint::Kind::pos_inf) return true;
    if (x.kind == Endpoint::Kind::pos_inf) return false;
    return x.value <= y.value;
  };
  return ge(iv.a, lo) && le(iv.b, hi);
}

} // namespace detail

/// Checks admissibility (deg sigma <= 2, deg tau <= 1, tau' < 0, sigma'' <= 0),
/// positivity of sigma on (a, b), rational roots of sigma and the boundary
/// condition sigma*rho*s^k -> 0 at both ends, then derives the weight.
inline Family validate_family(Polynomial sigma, Polynomial tau, Interval interval, std::string name = "custom") {
  using K = Endpoint::Kind;
  if (sigma.degree() > 2) throw family_error(Violation::sigma_degree, "deg sigma = " + std::to_string(sigma.degree()) + " > 2");
  if (tau.degree() > 1) throw family_error(Violation::tau_degree, "deg tau = " + std::to_string(tau.degree()) + " > 1");
  if (sigma.is_zero()) throw family_error(Violation::sigma_nonpositive, "sigma is the zero polynomial");
  if (tau.coeff(1) >= 0)
    throw family_error(Violation::tau_slope_nonnegative, "tau' = " + to_string(tau.coeff(1)) + " must be < 0");
  if (sigma.coeff(2) > 0)
    throw family_error(Violation::sigma_convex, "sigma'' = " + to_string(sigma.coeff(2) * 2) + " must be <= 0");
  if (interval.a.kind == K::pos_inf || interval.b.kind == K::neg_inf ||
      (interval.a.is_finite() && interval.b.is_finite() && interval.a.value >= interval.b.value))
    throw family_error(Violation::malformed_interval, "interval " + detail::interval_str(interval) + " is empty");

  Family f;
  f.sigma_ = sigma;
  f.tau_ = tau;
  f.interval_ = interval;
  f.name_ = std::move(name);
  const std::string iv = detail::interval_str(interval);
  const Rational s0 = sigma.coeff(0), s1 = sigma.coeff(1), s2 = sigma.coeff(2);
  const Rational t0 = tau.coeff(0), t1 = tau.coeff(1);

  auto require_endpoint = [&](const Endpoint &got, const Endpoint &want, const char *side) {
    if (!(got == want))
      throw family_error(Violation::boundary_condition, std::string("sigma*rho*s^k does not vanish at ") + side +
                                                            " endpoint " + got.str() + " (expected " + want.str() +
                                                            ")");
  };

  switch (sigma.degree()) {
  case 0: {
    if (s0 <= 0) throw family_error(Violation::sigma_nonpositive, "sigma = " + to_string(s0) + " <= 0 on " + iv);
    f.tag_ = ClassTag::hermite_like;
    require_endpoint(interval.a, Endpoint::minus_infinity(), "left");
    require_endpoint(interval.b, Endpoint::plus_infinity(), "right");
    // rho'/rho = tau/sigma0
    f.weight_.exp_poly = Polynomial{0, t0 / s0, t1 / (2 * s0)};
    break;
  }
  case 1: {
    const Rational r = -s0 / s1;
    const Endpoint lo = s1 > 0 ? Endpoint::at(r) : Endpoint::minus_infinity();
    const Endpoint hi = s1 > 0 ? Endpoint::plus_infinity() : Endpoint::at(r);
    if (!detail::inside(interval, lo, hi))
      throw family_error(Violation::sigma_nonpositive, "sigma = " + sigma.str() + " is not positive on " + iv);
    f.tag_ = ClassTag::laguerre_like;
    require_endpoint(interval.a, lo, "left");
    require_endpoint(interval.b, hi, "right");
    // (tau - sigma')/sigma = t1/s1 + (tau(r) - s1)/(s1 (s - r))
    const Rational gamma = (tau(r) - s1) / s1;
    if (gamma + 1 <= 0)
      throw family_error(Violation::boundary_condition,
                         "weight exponent " + to_string(gamma) + " at s = " + to_string(r) + " needs to exceed -1");
    f.weight_.exp_poly = Polynomial{0, t1 / s1};
    f.weight_.root_factors.push_back({r, gamma, s1 > 0 ? 1 : -1});
    break;
  }
  default: {
    const Rational disc = s1 * s1 - 4 * s2 * s0;
    if (disc <= 0)
      throw family_error(Violation::sigma_nonpositive, "sigma = " + sigma.str() + " has no positive region");
    auto root = rational_sqrt(disc);
    if (!root)
      throw family_error(Violation::irrational_roots,
                         "sigma = " + sigma.str() + " has irrational roots (discriminant " + to_string(disc) + ")");
    // s2 < 0, so the smaller root takes +sqrt.
    Rational r1 = (-s1 + *root) / (2 * s2), r2 = (-s1 - *root) / (2 * s2);
    if (r1 > r2) std::swap(r1, r2);
    if (!detail::inside(interval, Endpoint::at(r1), Endpoint::at(r2)))
      throw family_error(Violation::sigma_nonpositive, "sigma = " + sigma.str() + " is not positive on " + iv);
    f.tag_ = ClassTag::jacobi_like;
    require_endpoint(interval.a, Endpoint::at(r1), "left");
    require_endpoint(interval.b, Endpoint::at(r2), "right");
    const Polynomial dsig = sigma.derivative();
    const Rational A = (tau(r1) - dsig(r1)) / (s2 * (r1 - r2));
    const Rational B = (tau(r2) - dsig(r2)) / (s2 * (r2 - r1));
    if (A + 1 <= 0 || B + 1 <= 0)
      throw family_error(Violation::boundary_condition, "weight exponents (" + to_string(A) + ", " + to_string(B) +
                                                            ") at the roots of sigma need to exceed -1");
    f.weight_.root_factors.push_back({r1, A, 1});
    f.weight_.root_factors.push_back({r2, B, -1});
    break;
  }
  }
  return f;
}

namespace presets {

/// sigma = 1 - s^2, tau = beta - alpha - (alpha + beta + 2)s on (-1, 1).
inline Family jacobi(const Rational &alpha, const Rational &beta) {
  return validate_family(Polynomial{1, 0, -1}, Polynomial{beta - alpha, -(alpha + beta + 2)},
                         {Endpoint::at(-1), Endpoint::at(1)},
                         "jacobi(" + to_string(alpha) + "," + to_string(beta) + ")");
}

inline Family legendre() {
  return validate_family(Polynomial{1, 0, -1}, Polynomial{0, -2}, {Endpoint::at(-1), Endpoint::at(1)}, "legendre");
}

/// sigma = s, tau = alpha + 1 - s on (0, inf).
inline Family laguerre(const Rational &alpha) {
  return validate_family(Polynomial{0, 1}, Polynomial{alpha + 1, -1},
                         {Endpoint::at(0), Endpoint::plus_infinity()}, "laguerre(" + to_string(alpha) + ")");
}

/// sigma = 1, tau = -2s on (-inf, inf).
inline Family hermite() {
  return validate_family(Polynomial{1}, Polynomial{0, -2}, {Endpoint::minus_infinity(), Endpoint::plus_infinity()},
                         "hermite");
}

} // namespace presets

} // namespace hyperladder

#endif
