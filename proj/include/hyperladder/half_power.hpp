#ifndef HYPERLADDER_HALF_POWER_HPP
#define HYPERLADDER_HALF_POWER_HPP

#include "polynomial.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hyperladder {

class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The function P(s) * sigma(s)^(k/2).
///
/// Equality is decided by cross-multiplying sigma powers, never by dividing
/// sigma out of P, so two representations of the same function compare equal
/// whenever their half powers have the same parity.
class HalfPowerFunction {
public:
  HalfPowerFunction() = default;
  HalfPowerFunction(Polynomial poly, unsigned halfpower, Polynomial sigma)
      : poly_(std::move(poly)), halfpower_(halfpower), sigma_(std::move(sigma)) {}

  const Polynomial &poly() const { return poly_; }
  unsigned halfpower() const { return halfpower_; }
  const Polynomial &sigma() const { return sigma_; }
  bool is_zero() const { return poly_.is_zero(); }

  /// Rewrites with a smaller half power of the same parity:
  /// P*sigma^(k/2) = (P*sigma^((k-j)/2)) * sigma^(j/2).
  HalfPowerFunction lowered_to(unsigned target) const {
    if (target > halfpower_ || (halfpower_ - target) % 2 != 0)
      throw domain_error("cannot rewrite sigma^(" + std::to_string(halfpower_) + "/2) as sigma^(" +
                         std::to_string(target) + "/2)");
    return {poly_ * sigma_.pow((halfpower_ - target) / 2), target, sigma_};
  }

  HalfPowerFunction scaled(const Rational &c) const { return {poly_.scaled(c), halfpower_, sigma_}; }

  template <typename T>
    requires std::is_floating_point_v<T>
  T operator()(T s) const {
    using std::pow;
    using std::sqrt;
    const T sig = sigma_(s);
    T factor = halfpower_ % 2 == 0 ? pow(sig, static_cast<int>(halfpower_ / 2))
                                   : pow(sig, static_cast<int>(halfpower_ / 2)) * sqrt(sig);
    return poly_(s) * factor;
  }

  friend bool hp_equal(const HalfPowerFunction &f, const HalfPowerFunction &g) {
    check_same_sigma(f, g);
    if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
    if (f.halfpower_ % 2 != g.halfpower_ % 2) return false;
    const unsigned lo = std::min(f.halfpower_, g.halfpower_);
    return f.lowered_to(lo).poly_ == g.lowered_to(lo).poly_;
  }

  friend bool operator==(const HalfPowerFunction &f, const HalfPowerFunction &g) { return hp_equal(f, g); }

  friend HalfPowerFunction operator+(const HalfPowerFunction &f, const HalfPowerFunction &g) {
    check_same_sigma(f, g);
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    if (f.halfpower_ % 2 != g.halfpower_ % 2)
      throw domain_error("sum of half-power functions with opposite sigma parity is not representable");
    const unsigned lo = std::min(f.halfpower_, g.halfpower_);
    return {f.lowered_to(lo).poly_ + g.lowered_to(lo).poly_, lo, f.sigma_};
  }

  friend HalfPowerFunction operator-(const HalfPowerFunction &f) { return f.scaled(-1); }
  friend HalfPowerFunction operator-(const HalfPowerFunction &f, const HalfPowerFunction &g) { return f + (-g); }
  friend HalfPowerFunction operator*(const Rational &c, const HalfPowerFunction &f) { return f.scaled(c); }

  std::string str() const {
    return "(" + poly_.str() + ")*sigma^(" + std::to_string(halfpower_) + "/2)";
  }

private:
  static void check_same_sigma(const HalfPowerFunction &f, const HalfPowerFunction &g) {
    if (!(f.sigma_ == g.sigma_))
      throw domain_error("half-power functions refer to different sigma: " + f.sigma_.str() + " vs " +
                         g.sigma_.str());
  }

  Polynomial poly_;
  unsigned halfpower_ = 0;
  Polynomial sigma_;
};

/// Equality of the represented functions (same sigma required).
bool hp_equal(const HalfPowerFunction &f, const HalfPowerFunction &g);

} // namespace hyperladder

#endif
