#ifndef HYPERLADDER_COORDINATE_MAP_HPP
#define HYPERLADDER_COORDINATE_MAP_HPP

#include "family.hpp"
#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperladder {

/// Point where the map is pinned: s(x0) = s0.
struct Anchor {
  Real x0;
  Real s0;
};

/// s = s(x) with ds/dx = sign * kappa(s(x)).
///
/// Closed forms: sigma = 1 - s^2 with sign -1 gives s = cos x on (0, pi);
/// sigma = s with sign +1 gives s = x^2/4 on (0, inf); sigma = 1 with sign +1
/// gives s = x. Everything else integrates the smooth system
/// s' = sign kappa, kappa' = sign sigma'(s)/2 with adaptive RK4.
class CoordinateMap {
public:
  enum class Kind { cosine, quadratic, identity, numeric };

  CoordinateMap(const Family &f, int sign, std::optional<Anchor> anchor = std::nullopt)
      : sigma_(f.sigma()), fsigma_(f.sigma()), fdsigma_(f.sigma().derivative()), sign_(sign), interval_(f.interval()) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("coordinate map sign must be +1 or -1");
    setup_antiderivative();

    // x(s) = sign * F(s) + C
    const Real xa = sign_ * F(interval_.a), xb = sign_ * F(interval_.b);
    const Real lo = std::min(xa, xb), hi = std::max(xa, xb);
    Real canonical_c = 0;
    if (std::isfinite(lo))
      canonical_c = -lo;
    else if (std::isfinite(hi))
      canonical_c = -hi;

    if (anchor) {
      if (!f.contains(anchor->s0))
        throw domain_error("coordinate map anchor s0 = " + std::to_string(static_cast<double>(anchor->s0)) +
                           " lies outside " + interval_.a.str() + ".." + interval_.b.str());
      c_ = anchor->x0 - sign_ * F(anchor->s0);
      anchor_ = *anchor;
    } else {
      c_ = canonical_c;
      const Real s0 = to_floating<Real>(f.interior_point());
      anchor_ = {sign_ * F(s0) + c_, s0};
    }
    x_lo_ = lo + c_;
    x_hi_ = hi + c_;

    const bool canonical = std::fabs(c_ - canonical_c) <= 64 * std::numeric_limits<Real>::epsilon() * (1 + std::fabs(c_));
    if (canonical && sign_ == -1 && sigma_ == Polynomial{1, 0, -1})
      kind_ = Kind::cosine;
    else if (canonical && sign_ == 1 && sigma_ == Polynomial{0, 1})
      kind_ = Kind::quadratic;
    else if (canonical && sign_ == 1 && sigma_ == Polynomial{1})
      kind_ = Kind::identity;
    else
      build_checkpoints(f);
  }

  Kind kind() const { return kind_; }
  int sign() const { return sign_; }
  std::pair<Real, Real> x_domain() const { return {x_lo_, x_hi_}; }
  Anchor anchor() const { return anchor_; }

  bool contains(Real x) const { return x > x_lo_ && x < x_hi_; }

  /// Closed-form inverse x(s) (antiderivative of 1/kappa).
  Real x_of_s(Real s) const { return sign_ * F(s) + c_; }

  /// (s(x), kappa(s(x))).
  std::pair<Real, Real> state(Real x) const {
    check(x);
    switch (kind_) {
    case Kind::cosine: return {std::cos(x), std::sin(x)};
    case Kind::quadratic: return {x * x / 4, x / 2};
    case Kind::identity: return {x, 1};
    default: return integrate_to(x);
    }
  }

  Real s(Real x) const { return state(x).first; }
  Real kappa(Real x) const { return state(x).second; }
  Real ds_dx(Real x) const { return sign_ * kappa(x); }
  Real dkappa_dx(Real x) const { return sign_ * fdsigma_(s(x)) / 2; }

  /// x-images of the extreme nodes of the 20-point Gauss rule, ascending.
  std::pair<Real, Real> node_window(const Family &f) const {
    const QuadratureRule rule = gauss_rule(f, 20);
    const Real u = x_of_s(rule.nodes.front()), v = x_of_s(rule.nodes.back());
    return {std::min(u, v), std::max(u, v)};
  }

  std::string kind_name() const {
    switch (kind_) {
    case Kind::cosine: return "s = cos x";
    case Kind::quadratic: return "s = x^2/4";
    case Kind::identity: return "s = x";
    default: return "numeric";
    }
  }

private:
  struct Node {
    Real x, s, k;
  };

  void check(Real x) const {
    if (!contains(x))
      throw domain_error("x = " + std::to_string(static_cast<double>(x)) + " lies outside the x-domain (" +
                         std::to_string(static_cast<double>(x_lo_)) + ", " + std::to_string(static_cast<double>(x_hi_)) + ")");
  }

  void setup_antiderivative() {
    deg_ = sigma_.degree();
    if (deg_ == 2) {
      const Real a2 = to_floating<Real>(sigma_.coeff(2)), a1 = to_floating<Real>(sigma_.coeff(1));
      big_a_ = -a2;
      centre_ = -a1 / (2 * a2);
      half_width_ = std::sqrt(sigma_(centre_) / big_a_);
    }
  }

  /// Increasing antiderivative of 1/sqrt(sigma); infinite at infinite endpoints.
  Real F(Real s) const {
    switch (deg_) {
    case 0: return s / std::sqrt(to_floating<Real>(sigma_.coeff(0)));
    case 1: return 2 * std::sqrt(std::max<Real>(fsigma_(s), 0)) / to_floating<Real>(sigma_.coeff(1));
    default: return std::asin(std::clamp<Real>((s - centre_) / half_width_, -1, 1)) / std::sqrt(big_a_);
    }
  }

  Real F(const Endpoint &e) const {
    if (e.is_finite()) return F(e.to_real());
    const Real inf = std::numeric_limits<Real>::infinity();
    return e.kind == Endpoint::Kind::pos_inf ? inf : -inf;
  }

  using Y = std::pair<Real, Real>;

  Y rhs(const Y &y) const { return {sign_ * y.second, sign_ * fdsigma_(y.first) / 2}; }

  Y rk4(const Y &y, Real h) const {
    const Y k1 = rhs(y);
    const Y k2 = rhs({y.first + h / 2 * k1.first, y.second + h / 2 * k1.second});
    const Y k3 = rhs({y.first + h / 2 * k2.first, y.second + h / 2 * k2.second});
    const Y k4 = rhs({y.first + h * k3.first, y.second + h * k3.second});
    return {y.first + h / 6 * (k1.first + 2 * k2.first + 2 * k3.first + k4.first),
            y.second + h / 6 * (k1.second + 2 * k2.second + 2 * k3.second + k4.second)};
  }

  /// Adaptive RK4 with step doubling, local tolerance 1e-12; calls visit at every accepted step.
  template <typename Visit> Y advance(Real x, Y y, Real target, Visit &&visit) const {
    constexpr Real tol = 1e-12L;
    Real h = std::min<Real>(0.05L, std::fabs(target - x));
    while (x != target) {
      const Real dir = target > x ? 1 : -1;
      const Real step = std::min(h, std::fabs(target - x));
      const Y full = rk4(y, dir * step);
      const Y half = rk4(rk4(y, dir * step / 2), dir * step / 2);
      const Real err = std::max(std::fabs(full.first - half.first), std::fabs(full.second - half.second)) / 15;
      const Real scale = std::max<Real>({1, std::fabs(half.first), std::fabs(half.second)});
      if (err <= tol * scale || step < 1e-9L) {
        y = {half.first + (half.first - full.first) / 15, half.second + (half.second - full.second) / 15};
        x = std::fabs(target - x) <= step ? target : x + dir * step;
        visit(x, y);
        h = step * std::min<Real>(2, 0.9L * std::pow(tol * scale / std::max(err, std::numeric_limits<Real>::min()), 0.2L));
      } else {
        h = step / 2;
      }
    }
    return y;
  }

  void build_checkpoints(const Family &f) {
    kind_ = Kind::numeric;
    const Y y0{anchor_.s0, std::sqrt(fsigma_(anchor_.s0))};
    // cover the node window (or the finite domain) with checkpoints
    auto [lo, hi] = node_window(f);
    lo = std::max(lo - (hi - lo) / 4, x_lo_);
    hi = std::min(hi + (hi - lo) / 4, x_hi_);
    lo = std::min(lo, anchor_.x0);
    hi = std::max(hi, anchor_.x0);
    std::vector<Node> left, right;
    advance(anchor_.x0, y0, lo, [&](Real x, const Y &y) { left.push_back({x, y.first, y.second}); });
    advance(anchor_.x0, y0, hi, [&](Real x, const Y &y) { right.push_back({x, y.first, y.second}); });
    nodes_.assign(left.rbegin(), left.rend());
    nodes_.push_back({anchor_.x0, y0.first, y0.second});
    nodes_.insert(nodes_.end(), right.begin(), right.end());
  }

  Y integrate_to(Real x) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x, [](const Node &n, Real v) { return n.x < v; });
    const Node *best = nullptr;
    if (it != nodes_.end()) best = &*it;
    if (it != nodes_.begin() && (best == nullptr || x - std::prev(it)->x < best->x - x)) best = &*std::prev(it);
    if (best->x == x) return {best->s, best->k};
    return advance(best->x, Y{best->s, best->k}, x, [](Real, const Y &) {});
  }

  Polynomial sigma_;
  FloatPolynomial<Real> fsigma_, fdsigma_;
  int sign_;
  Interval interval_;
  Kind kind_ = Kind::numeric;
  int deg_ = 0;
  Real big_a_ = 0, centre_ = 0, half_width_ = 0;
  Real c_ = 0, x_lo_ = 0, x_hi_ = 0;
  Anchor anchor_{0, 0};
  std::vector<Node> nodes_;
};

/// sign -1 for jacobi_like (s = cos x), +1 otherwise.
inline int default_sign(const Family &f) { return f.class_tag() == ClassTag::jacobi_like ? -1 : 1; }

inline CoordinateMap build_coordinate_map(const Family &f, int sign, std::optional<Anchor> anchor = std::nullopt) {
  return CoordinateMap(f, sign, anchor);
}

} // namespace hyperladder

#endif
