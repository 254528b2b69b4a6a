#ifndef HYPERLADDER_POLYNOMIAL_HPP
#define HYPERLADDER_POLYNOMIAL_HPP

#include "rational.hpp"

#include <initializer_list>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hyperladder {

/// Univariate polynomial with exact rational coefficients, stored
/// degree-ascending. The zero polynomial has no coefficients; otherwise the
/// leading coefficient is nonzero.
class Polynomial {
public:
  Polynomial() = default;

  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(const Rational &c) { return Polynomial(std::vector<Rational>{c}); }

  static Polynomial monomial(unsigned degree, const Rational &c = 1) {
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return Polynomial(std::move(v));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of s^k; zero beyond the stored range.
  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  const std::vector<Rational> &coefficients() const { return coeffs_; }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
    return Polynomial(std::move(d));
  }

  Polynomial derivative(unsigned order) const {
    Polynomial p = *this;
    for (unsigned i = 0; i < order && !p.is_zero(); ++i) p = p.derivative();
    return p;
  }

  Polynomial scaled(const Rational &c) const {
    if (c == 0) return {};
    std::vector<Rational> v(coeffs_);
    for (auto &x : v) x *= c;
    return Polynomial(std::move(v));
  }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(1);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  /// Exact Horner evaluation.
  Rational operator()(const Rational &s) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
  }

  /// Floating Horner evaluation; coefficients are rounded to T first.
  template <typename T>
    requires std::is_floating_point_v<T>
  T operator()(T s) const {
    T acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + to_floating<T>(*it);
    return acc;
  }

  friend Polynomial operator+(const Polynomial &p, const Polynomial &q) {
    std::vector<Rational> v(std::max(p.coeffs_.size(), q.coeffs_.size()), Rational(0));
    for (std::size_t k = 0; k < p.coeffs_.size(); ++k) v[k] += p.coeffs_[k];
    for (std::size_t k = 0; k < q.coeffs_.size(); ++k) v[k] += q.coeffs_[k];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator-(const Polynomial &p) { return p.scaled(-1); }

  friend Polynomial operator-(const Polynomial &p, const Polynomial &q) { return p + (-q); }

  friend Polynomial operator*(const Polynomial &p, const Polynomial &q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<Rational> v(p.coeffs_.size() + q.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < q.coeffs_.size(); ++j) v[i + j] += p.coeffs_[i] * q.coeffs_[j];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator*(const Rational &c, const Polynomial &p) { return p.scaled(c); }
  friend Polynomial operator*(const Polynomial &p, const Rational &c) { return p.scaled(c); }

  friend bool operator==(const Polynomial &p, const Polynomial &q) { return p.coeffs_ == q.coeffs_; }

  Polynomial &operator+=(const Polynomial &q) { return *this = *this + q; }
  Polynomial &operator-=(const Polynomial &q) { return *this = *this - q; }
  Polynomial &operator*=(const Polynomial &q) { return *this = *this * q; }

  /// Human-readable form, e.g. "s^2 - 1/3".
  std::string str(const char *var = "s") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      const Rational &c = coeffs_[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      Rational mag = abs(c);
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (k == 0 || mag != 1) os << to_string(mag);
      if (k > 0) {
        if (mag != 1) os << "*";
        os << var;
        if (k > 1) os << "^" << k;
      }
    }
    return os.str();
  }

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

inline std::ostream &operator<<(std::ostream &os, const Polynomial &p) { return os << p.str(); }

/// Coefficients rounded once to floating point, for repeated evaluation.
template <typename T> class FloatPolynomial {
public:
  FloatPolynomial() = default;
  explicit FloatPolynomial(const Polynomial &p) {
    coeffs_.reserve(p.coefficients().size());
    for (const auto &c : p.coefficients()) coeffs_.push_back(to_floating<T>(c));
  }

  T operator()(T s) const {
    T acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
  }

  std::span<const T> coefficients() const { return coeffs_; }

private:
  std::vector<T> coeffs_;
};

} // namespace hyperladder

#endif
