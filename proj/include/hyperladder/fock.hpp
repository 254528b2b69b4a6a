#ifndef HYPERLADDER_FOCK_HPP
#define HYPERLADDER_FOCK_HPP

#include "family.hpp"
#include "quadrature.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperladder {

using Complex = std::complex<double>;

/// |l,m> = Phi_{l,m} / ||Phi_{l,m}||, a point of the triangle 0 <= m <= l.
struct StateLabel {
  unsigned l = 0;
  unsigned m = 0;

  StateLabel(unsigned l_, unsigned m_) : l(l_), m(m_) {
    if (m > l) throw std::out_of_range("state label |" + std::to_string(l) + "," + std::to_string(m) + "> lies outside 0 <= m <= l");
  }
  unsigned n() const { return l - m; }
};

/// Finite vector over {|m+n, m>}_{n>=0}; coefficients keyed by n = l - m.
struct FockVector {
  unsigned m = 0;
  std::map<unsigned, Complex> coeffs;

  static FockVector basis(unsigned m, unsigned n, Complex c = 1.0) {
    FockVector v{m, {}};
    v.coeffs[n] = c;
    return v;
  }

  Complex at(unsigned n) const {
    const auto it = coeffs.find(n);
    return it == coeffs.end() ? Complex(0) : it->second;
  }

  double norm_squared() const {
    double acc = 0;
    for (const auto &[n, c] : coeffs) acc += std::norm(c);
    return acc;
  }
  double norm() const { return std::sqrt(norm_squared()); }

  bool is_zero() const {
    for (const auto &[n, c] : coeffs)
      if (c != Complex(0)) return false;
    return true;
  }

  friend FockVector operator-(const FockVector &u, const FockVector &v) {
    if (u.m != v.m) throw std::invalid_argument("Fock vectors live in different subspaces m = " + std::to_string(u.m) + ", " + std::to_string(v.m));
    FockVector r = u;
    for (const auto &[n, c] : v.coeffs) r.coeffs[n] -= c;
    return r;
  }

  friend FockVector operator*(Complex z, const FockVector &v) {
    FockVector r = v;
    for (auto &[n, c] : r.coeffs) c *= z;
    return r;
  }
};

/// <u, v>, antilinear in u.
inline Complex dot(const FockVector &u, const FockVector &v) {
  if (u.m != v.m) return 0;
  Complex acc = 0;
  for (const auto &[n, c] : u.coeffs) acc += std::conj(c) * v.at(n);
  return acc;
}

/// e_n = lambda_{m+n} - lambda_m and eps_n = e_1 ... e_n, both exact.
class EnergyLadder {
public:
  EnergyLadder(const Family &f, unsigned m) : m_(m), sigma2_(f.sigma_second()), tau1_(f.tau_slope()) {}

  unsigned m() const { return m_; }

  Rational lambda(unsigned l) const {
    const Rational lr(static_cast<long>(l));
    return -lr * (lr - 1) * sigma2_ / 2 - lr * tau1_;
  }
  Rational e(unsigned n) const { return lambda(m_ + n) - lambda(m_); }
  Rational eps(unsigned n) const {
    Rational acc = 1;
    for (unsigned k = 1; k <= n; ++k) acc *= e(k);
    return acc;
  }
  double sqrt_e(unsigned n) const { return std::sqrt(to_floating<double>(e(n))); }

private:
  unsigned m_;
  Rational sigma2_, tau1_;
};

/// a_m: n -> sqrt(e_n) c_n placed at n - 1.
inline FockVector a_lower(const Family &f, const FockVector &v) {
  const EnergyLadder ladder(f, v.m);
  FockVector r{v.m, {}};
  for (const auto &[n, c] : v.coeffs)
    if (n > 0) r.coeffs[n - 1] += ladder.sqrt_e(n) * c;
  return r;
}

/// a_m^+: n -> sqrt(e_{n+1}) c_n placed at n + 1.
inline FockVector a_raise(const Family &f, const FockVector &v) {
  const EnergyLadder ladder(f, v.m);
  FockVector r{v.m, {}};
  for (const auto &[n, c] : v.coeffs) r.coeffs[n + 1] += ladder.sqrt_e(n + 1) * c;
  return r;
}

enum class Shift { up, down };

/// U_m |l,m> = |l+1,m+1>; down is its adjoint.
inline FockVector shift_U(const FockVector &v, Shift dir) {
  if (dir == Shift::up) return {v.m + 1, v.coeffs};
  if (v.m == 0 && !v.is_zero())
    throw std::out_of_range("shift_U down from m = 0 would leave the triangle l >= m >= 0");
  return {v.m == 0 ? 0 : v.m - 1, v.coeffs};
}

enum class AlgebraClass { su11, heisenberg_weyl };

inline const char *to_string(AlgebraClass a) { return a == AlgebraClass::su11 ? "su(1,1)" : "h(2)"; }

/// e_{n+1} - e_n for n = 0..n_max.
inline std::vector<Rational> first_differences(const Family &f, unsigned m, unsigned n_max) {
  const EnergyLadder ladder(f, m);
  std::vector<Rational> d;
  for (unsigned n = 0; n <= n_max; ++n) d.push_back(ladder.e(n + 1) - ladder.e(n));
  return d;
}

/// su(1,1) iff sigma'' < 0. The commutator signature is cross-checked on
/// exact first differences (constant for h(2), affine with nonzero slope for su(1,1)).
inline AlgebraClass classify_algebra(const Family &f) {
  const AlgebraClass by_sigma = f.sigma_second() < 0 ? AlgebraClass::su11 : AlgebraClass::heisenberg_weyl;
  const auto d = first_differences(f, 0, 20);
  const Rational slope = d[1] - d[0];
  bool affine = true;
  for (std::size_t n = 1; n < d.size(); ++n) affine = affine && d[n] - d[n - 1] == slope;
  const AlgebraClass by_differences = slope == 0 ? AlgebraClass::heisenberg_weyl : AlgebraClass::su11;
  if (!affine || by_sigma != by_differences)
    throw std::logic_error("first differences of e_n disagree with the sign of sigma''");
  return by_sigma;
}

struct RadiusReport {
  bool infinite = true;
  std::vector<double> diagnostics; // eps_n^(1/n), n = 1..n_max
};

inline RadiusReport convergence_radius(const Family &f, unsigned m, unsigned n_max) {
  if (n_max < 2) throw std::invalid_argument("convergence_radius: n_max must be >= 2");
  const EnergyLadder ladder(f, m);
  RadiusReport r;
  Real log_eps = 0;
  for (unsigned n = 1; n <= n_max; ++n) {
    log_eps += std::log(to_floating<Real>(ladder.e(n)));
    r.diagnostics.push_back(static_cast<double>(std::exp(log_eps / n)));
  }
  // lambda_l is strictly increasing and at least linear in l, so e_n -> infinity and R = infinity.
  return r;
}

struct CoherentState {
  unsigned m = 0;
  Complex z;
  unsigned truncation = 0;
  std::vector<Complex> coeffs; // c_0 .. c_N
  double normalizer = 1;       // N(|z|^2) of the truncated series
  double residual = 0;         // ||a|z> - z|z>||
  double tail_bound = 0;       // |z| |c_N|

  FockVector vector() const {
    FockVector v{m, {}};
    for (unsigned n = 0; n < coeffs.size(); ++n) v.coeffs[n] = coeffs[n];
    return v;
  }
};

/// |z> = (1/N) sum_{n<=N} z^n / sqrt(eps_n) |n>, normalized over the truncated sum.
inline CoherentState coherent_state(const Family &f, unsigned m, Complex z, unsigned N) {
  if (N < 1) throw std::invalid_argument("coherent_state: truncation N must be >= 1");
  const EnergyLadder ladder(f, m);
  CoherentState cs;
  cs.m = m, cs.z = z, cs.truncation = N;
  cs.coeffs.assign(N + 1, Complex(0));
  const Real r = std::abs(z);
  if (r == 0) {
    cs.coeffs[0] = 1;
    return cs;
  }
  // log |z^n / sqrt(eps_n)|, then a log-sum-exp normalizer
  std::vector<Real> logmag(N + 1);
  Real log_eps = 0;
  for (unsigned n = 0; n <= N; ++n) {
    if (n > 0) log_eps += std::log(to_floating<Real>(ladder.e(n)));
    logmag[n] = n * std::log(r) - log_eps / 2;
  }
  Real top = logmag[0];
  for (Real v : logmag) top = std::max(top, v);
  Real sum = 0;
  for (Real v : logmag) sum += std::exp(2 * (v - top));
  const Real log_norm = top + std::log(sum) / 2;
  cs.normalizer = static_cast<double>(std::exp(log_norm));
  const double theta = std::arg(z);
  for (unsigned n = 0; n <= N; ++n)
    cs.coeffs[n] = std::polar(static_cast<double>(std::exp(logmag[n] - log_norm)), n * theta);
  const FockVector v = cs.vector();
  cs.residual = (a_lower(f, v) - z * v).norm();
  cs.tail_bound = std::abs(z) * std::abs(cs.coeffs[N]);
  return cs;
}

namespace detail {

/// Phi_{l,m}(s) / ||Phi_{l,m}|| for l = m..l_max, from the monic three-term
/// recurrence differentiated m times; the norm is m0 prod beta times prod (lambda_l - lambda_j).
class NormalizedAssociated {
public:
  NormalizedAssociated(const Family &f, unsigned m, unsigned l_max) : m_(m), sigma_(f.sigma()) {
    const RecurrenceCoefficients rc = recurrence_coefficients(f, l_max + 1);
    for (unsigned k = 0; k <= l_max; ++k) {
      a_.push_back(to_floating<Real>(rc.alpha[k]));
      b_.push_back(to_floating<Real>(rc.beta[k]));
    }
    Rational h = 1;
    for (unsigned l = 0; l <= l_max; ++l) {
      if (l > 0) h *= rc.beta[l];
      if (l < m) {
        inv_norm_.push_back(0);
        continue;
      }
      Rational factor = h;
      for (unsigned j = 0; j < m; ++j) factor *= f.eigenvalue(l) - f.eigenvalue(j);
      inv_norm_.push_back(1 / std::sqrt(to_floating<Real>(factor) * f.zeroth_moment()));
    }
  }

  std::vector<Real> operator()(Real s) const {
    const std::size_t L = a_.size();
    // d[j][k] = p_k^{(j)}(s)
    std::vector<std::vector<Real>> d(m_ + 1, std::vector<Real>(L + 1, 0));
    for (unsigned j = 0; j <= m_; ++j) {
      if (j == 0) d[0][0] = 1;
      for (std::size_t k = 0; k < L; ++k) {
        Real next = (s - a_[k]) * d[j][k] + (j > 0 ? j * d[j - 1][k] : 0);
        if (k > 0) next -= b_[k] * d[j][k - 1];
        d[j][k + 1] = next;
      }
    }
    const Real sig = std::max<Real>(sigma_(s), 0);
    const Real kappa_m = std::pow(std::sqrt(sig), static_cast<Real>(m_));
    std::vector<Real> out(L, 0);
    for (std::size_t l = m_; l < L; ++l) out[l] = kappa_m * d[m_][l] * inv_norm_[l];
    return out;
  }

private:
  unsigned m_;
  Polynomial sigma_;
  std::vector<Real> a_, b_, inv_norm_;
};

} // namespace detail

struct ProfileSample {
  double s;
  Complex value;
};

/// sum_n c_n Phi_{m+n,m}(s) / ||Phi_{m+n,m}|| at the given points.
inline std::vector<ProfileSample> coherent_profile(const CoherentState &cs, const Family &f, const std::vector<Real> &grid) {
  const unsigned l_max = cs.m + cs.truncation;
  const detail::NormalizedAssociated phi(f, cs.m, l_max);
  std::vector<ProfileSample> out;
  out.reserve(grid.size());
  for (Real s : grid) {
    const auto vals = phi(s);
    Complex acc = 0;
    for (unsigned n = 0; n < cs.coeffs.size(); ++n) acc += cs.coeffs[n] * static_cast<double>(vals[cs.m + n]);
    out.push_back({static_cast<double>(s), acc});
  }
  return out;
}

/// Uniform grid of n points over the sampling window, endpoints included.
inline std::vector<Real> uniform_grid(Real lo, Real hi, unsigned n) {
  if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
  std::vector<Real> g(n);
  for (unsigned i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

inline std::vector<ProfileSample> coherent_profile(const CoherentState &cs, const Family &f, unsigned grid_n) {
  const auto [lo, hi] = sampling_window(f);
  return coherent_profile(cs, f, uniform_grid(lo, hi, grid_n));
}

/// integral of |profile|^2 rho, by a Gauss rule exact for the truncated expansion.
inline double profile_norm_squared(const CoherentState &cs, const Family &f) {
  const unsigned deg = 2 * cs.truncation + 2 * cs.m * static_cast<unsigned>(std::max(0, f.sigma().degree()));
  const QuadratureRule rule = gauss_rule(f, points_for_degree(static_cast<int>(deg)));
  std::vector<Real> nodes(rule.nodes.begin(), rule.nodes.end());
  const auto samples = coherent_profile(cs, f, nodes);
  Real acc = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) acc += rule.weights[i] * std::norm(samples[i].value);
  return static_cast<double>(acc);
}

} // namespace hyperladder

#endif
