#ifndef HYPERLADDER_VERIFY_HPP
#define HYPERLADDER_VERIFY_HPP

#include "fock.hpp"
#include "io.hpp"
#include "ladder.hpp"
#include "quadrature.hpp"
#include "schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperladder {

/// Default tolerances; overrides may only tighten them.
struct Tolerances {
  double adjoint = 1e-12;       // <A u, v> - <u, A+ v>, relative to ||u|| ||v|| + 1
  double norm = 1e-12;          // norm recursion vs direct quadrature, relative
  double orthogonality = 1e-12; // |<Phi_l, Phi_k>| relative to ||Phi_l|| ||Phi_k||
  double fock = 1e-14;          // Fock-space adjointness and number operator
  double coherent_norm = 1e-12;
  double coherent_residual = 1e-8;
  double pointwise = 1e-8;      // Riccati, ground-state, partner and calA identities
  double closed_form = 1e-10;   // Poschl-Teller closed forms
  double ratio_window = 0.4;    // residual(h)/residual(h/2) within 4 +- window

  std::vector<std::pair<std::string, double *>> entries() {
    return {{"adjoint", &adjoint},         {"closed_form", &closed_form}, {"coherent_norm", &coherent_norm},
            {"coherent_residual", &coherent_residual}, {"fock", &fock},   {"norm", &norm},
            {"orthogonality", &orthogonality}, {"pointwise", &pointwise}, {"ratio_window", &ratio_window}};
  }

  void tighten(const std::string &key, double value) {
    for (auto &[name, slot] : entries())
      if (name == key) {
        if (!(value > 0) || value > *slot)
          throw std::invalid_argument("tolerance '" + key + "' may only be tightened: default " + Json(*slot).dump() +
                                      ", requested " + Json(value).dump());
        *slot = value;
        return;
      }
    throw std::invalid_argument("unknown tolerance '" + key +
                                "' (adjoint, closed_form, coherent_norm, coherent_residual, fock, norm, orthogonality, pointwise, ratio_window)");
  }

  Json to_json() {
    Json j = Json::object();
    for (auto &[name, slot] : entries()) j[name] = *slot;
    return j;
  }
};

struct Check {
  std::string suite;
  std::string identity;
  int l = -1, m = -1, k = -1;
  double residual = 0;
  double tolerance = 0;
  bool passed = false;
};

struct Report {
  std::vector<Check> checks;

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check &c) { return !c.passed; }));
  }
  bool passed() const { return failures() == 0; }
};

inline unsigned seed_from_env() {
  const char *s = std::getenv("SPECFACTORY_SEED");
  return s ? static_cast<unsigned>(std::strtoul(s, nullptr, 10)) : 0u;
}

namespace detail {

inline int suite_rank(const std::string &s) { return s == "ladder" ? 0 : s == "fock" ? 1 : 2; }

/// Largest coefficient of f - g after bringing both to a common half power; 0 iff equal.
inline double exact_gap(const HalfPowerFunction &f, const HalfPowerFunction &g) {
  if (hp_equal(f, g)) return 0;
  if (f.halfpower() % 2 != g.halfpower() % 2) return std::numeric_limits<double>::infinity();
  const unsigned lo = std::min(f.halfpower(), g.halfpower());
  const Polynomial d = f.lowered_to(lo).poly() - g.lowered_to(lo).poly();
  double worst = 0;
  for (const auto &c : d.coefficients()) worst = std::max(worst, std::fabs(to_floating<double>(c)));
  return worst;
}

class Recorder {
public:
  Recorder(Report &r, std::string suite) : report_(r), suite_(std::move(suite)) {}

  void exact(const std::string &identity, int l, int m, double gap, int k = -1) {
    report_.checks.push_back({suite_, identity, l, m, k, gap, 0, gap == 0});
  }
  void within(const std::string &identity, int l, int m, double residual, double tol, int k = -1) {
    report_.checks.push_back({suite_, identity, l, m, k, residual, tol, residual <= tol});
  }

private:
  Report &report_;
  std::string suite_;
};

inline double rel(Real a, Real b) { return static_cast<double>(std::fabs(a - b) / std::max<Real>(1, std::fabs(b))); }

} // namespace detail

inline void ladder_suite(const Family &f, const Tolerances &tol, Report &report) {
  detail::Recorder rec(report, "ladder");
  const unsigned L = 10;
  for (unsigned l = 0; l <= L; ++l)
    for (unsigned m = 0; m <= l; ++m) {
      const HalfPowerFunction here = associated_function(f, l, m).value;
      rec.exact("H_m Phi_{l,m} = lambda_l Phi_{l,m}", l, m, detail::exact_gap(apply_H(f, m, here), here.scaled(f.eigenvalue(l))));
      if (m >= 1) rec.exact("three-term recurrence", l, m, detail::exact_gap(three_term_check(f, l, m), zero_function(f, m)));
      if (m == l) continue;
      const HalfPowerFunction up = associated_function(f, l, m + 1).value;
      const Rational gap = f.eigenvalue(l) - f.eigenvalue(m);
      rec.exact("A_m Phi_{l,m} = Phi_{l,m+1}", l, m, detail::exact_gap(apply_A(f, m, here), up));
      rec.exact("A+_m Phi_{l,m+1} = (lambda_l - lambda_m) Phi_{l,m}", l, m, detail::exact_gap(apply_A_plus(f, m, up), here.scaled(gap)));
      rec.exact("A+_m A_m = H_m - lambda_m", l, m, detail::exact_gap(apply_A_plus(f, m, apply_A(f, m, here)), here.scaled(gap)));
      rec.exact("A_m A+_m = H_{m+1} - lambda_m", l, m, detail::exact_gap(apply_A(f, m, apply_A_plus(f, m, up)), up.scaled(gap)));
      const IntertwiningResult it = intertwining_check(f, l, m);
      rec.exact("H_m A+_m = A+_m H_{m+1}", l, m, it.lowering ? 0 : 1);
      rec.exact("A_m H_m = H_{m+1} A_m", l, m, it.raising ? 0 : 1);
    }

  for (unsigned l = 0; l <= 8; ++l)
    for (unsigned m = 0; m <= l; ++m) {
      const Real rec_norm = norm_squared(f, l, m), direct = norm_squared_direct(f, l, m);
      rec.within("norm recursion", l, m, static_cast<double>(std::fabs(rec_norm - direct) / direct), tol.norm);
    }

  for (unsigned m = 0; m < 8; ++m)
    for (unsigned l = m; l <= 8; ++l)
      for (unsigned k = m + 1; k <= 8; ++k) {
        const HalfPowerFunction u = associated_function(f, l, m).value, v = associated_function(f, k, m + 1).value;
        const Real diff = std::fabs(inner_product(f, apply_A(f, m, u), v) - inner_product(f, u, apply_A_plus(f, m, v)));
        const Real scale = std::sqrt(inner_product(f, u, u) * inner_product(f, v, v)) + 1;
        rec.within("<A_m u, v> = <u, A+_m v>", l, m, static_cast<double>(diff / scale), tol.adjoint, k);
      }

  for (unsigned l = 0; l <= 10; ++l)
    for (unsigned k = l + 1; k <= 10; ++k) {
      const HalfPowerFunction u = associated_function(f, l, 0).value, v = associated_function(f, k, 0).value;
      const Real scale = std::sqrt(inner_product(f, u, u) * inner_product(f, v, v));
      rec.within("orthogonality", l, 0, static_cast<double>(std::fabs(inner_product(f, u, v)) / scale), tol.orthogonality, k);
    }
}

inline void fock_suite(const Family &f, const Tolerances &tol, unsigned seed, Report &report) {
  detail::Recorder rec(report, "fock");
  bool classified = true;
  try {
    const AlgebraClass a = classify_algebra(f);
    classified = (a == AlgebraClass::su11) == (f.sigma_second() < 0);
  } catch (const std::logic_error &) {
    classified = false;
  }
  rec.exact("algebra classification matches first differences", -1, -1, classified ? 0 : 1);

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1, 1);
  for (unsigned m = 0; m <= 2; ++m) {
    const EnergyLadder ladder(f, m);
    for (unsigned n = 0; n <= 20; ++n) {
      const double en = to_floating<double>(ladder.e(n));
      const Complex got = a_raise(f, a_lower(f, FockVector::basis(m, n))).at(n);
      rec.within("a+ a |n> = e_n |n>", static_cast<int>(m + n), m, std::abs(got - en) / (1 + en), tol.fock);
    }
    for (int trial = 0; trial < 5; ++trial) {
      FockVector u{m, {}}, v{m, {}};
      for (unsigned n = 0; n < 10; ++n) u.coeffs[n] = {unit(rng), unit(rng)}, v.coeffs[n] = {unit(rng), unit(rng)};
      const Complex lhs = dot(a_raise(f, u), v), rhs = dot(u, a_lower(f, v));
      rec.within("<a+ u, v> = <u, a v>", -1, m, std::abs(lhs - rhs) / (1 + std::abs(lhs)), tol.fock, trial);
    }
    const RadiusReport r = convergence_radius(f, m, 40);
    bool increasing = r.infinite;
    for (std::size_t n = 1; n < r.diagnostics.size(); ++n) increasing = increasing && r.diagnostics[n] > r.diagnostics[n - 1];
    rec.exact("eps_n^(1/n) strictly increasing, R infinite", -1, m, increasing ? 0 : 1);

    const Complex zs[] = {0.5, 1.0, 2.0, Complex(0, 1)};
    for (int zi = 0; zi < 4; ++zi) {
      const CoherentState cs = coherent_state(f, m, zs[zi], 60);
      rec.within("coherent |z> unit norm", -1, m, std::fabs(cs.vector().norm_squared() - 1), tol.coherent_norm, zi);
      rec.within("a |z> = z |z>", -1, m, cs.residual, tol.coherent_residual, zi);
    }
  }
}

inline void schrod_suite(const FamilySpec &spec, const Tolerances &tol, Report &report) {
  detail::Recorder rec(report, "schrod");
  const SchrodingerSystem sys = make_system(spec.family);
  const Family &f = sys.family;
  const std::vector<Real> grid = residual_grid(sys, 41);

  for (unsigned m = 0; m <= 3; ++m) {
    double riccati = 0, ground_w = 0, ground_v = 0, partner = 0;
    const Real lambda_m = to_floating<Real>(f.eigenvalue(m));
    for (Real x : grid) {
      const Real w = superpotential_at(sys, m, x), dw = superpotential_derivative_at(sys, m, x);
      const Real v = potential_at(sys, m, x);
      riccati = std::max(riccati, detail::rel(v - lambda_m, w * w - sys.sign() * dw));
      ground_w = std::max(ground_w, detail::rel(ground_state_superpotential_at(sys, m, x), w));
      ground_v = std::max(ground_v, detail::rel(ground_state_potential_at(sys, m, x), v));
      partner = std::max(partner, detail::rel(partner_potential_at(sys, m + 1, x), potential_at(sys, m + 1, x)));
    }
    rec.within("V_m - lambda_m = W_m^2 - sign W_m'", -1, m, riccati, tol.pointwise);
    rec.within("W_m = -sign Psi_{m,m}'/Psi_{m,m}", -1, m, ground_w, tol.pointwise);
    rec.within("V_m = Psi_{m,m}''/Psi_{m,m} + lambda_m", -1, m, ground_v, tol.pointwise);
    rec.within("V_{m+1} from W_m equals V_{m+1} from W_{m+1}", -1, m, partner, tol.pointwise);
  }

  for (unsigned l = 0; l <= 4; ++l)
    for (unsigned m = 0; m <= l; ++m) {
      const std::vector<Real> here = wavefunction(sys, l, m, grid);
      Real scale = 0;
      for (Real v : here) scale = std::max(scale, std::fabs(v));
      if (m == l) {
        const auto killed = apply_calA(sys, m, CalDirection::lower, wave_samples(sys, l, m, grid));
        Real worst = 0;
        for (Real v : killed) worst = std::max(worst, std::fabs(v));
        rec.within("calA_m Psi_{m,m} = 0", l, m, static_cast<double>(worst / scale), tol.pointwise);
        continue;
      }
      const std::vector<Real> up = wavefunction(sys, l, m + 1, grid);
      Real up_scale = 0;
      for (Real v : up) up_scale = std::max(up_scale, std::fabs(v));
      const auto lowered = apply_calA(sys, m, CalDirection::lower, wave_samples(sys, l, m, grid));
      const auto raised = apply_calA(sys, m, CalDirection::raise, wave_samples(sys, l, m + 1, grid));
      const Real gap = to_floating<Real>(f.eigenvalue(l) - f.eigenvalue(m));
      Real lo_err = 0, hi_err = 0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        lo_err = std::max(lo_err, std::fabs(lowered[i] - up[i]));
        hi_err = std::max(hi_err, std::fabs(raised[i] - gap * here[i]));
      }
      rec.within("calA_m Psi_{l,m} = Psi_{l,m+1}", l, m, static_cast<double>(lo_err / up_scale), tol.pointwise);
      rec.within("calA+_m Psi_{l,m+1} = (lambda_l - lambda_m) Psi_{l,m}", l, m, static_cast<double>(hi_err / (gap * scale)), tol.pointwise);
    }

  for (unsigned l = 0; l <= 4; ++l)
    for (unsigned m = 0; m <= std::min(l, 2u); ++m) {
      const Real ratio = schrodinger_residual(sys, l, m, 1e-2L) / schrodinger_residual(sys, l, m, 5e-3L);
      rec.within("Schrodinger residual ratio h -> h/2 near 4", l, m, static_cast<double>(std::fabs(ratio - 4)), tol.ratio_window);
    }

  if (spec.preset == "poschl-teller") {
    const Real mu = to_floating<Real>(spec.params.at("mu")), eta = to_floating<Real>(spec.params.at("eta"));
    const std::vector<Real> fine = interior_grid(sys, 500);
    double w_err = 0, v_err = 0;
    for (Real x : fine) {
      const Real w = (mu / std::tan(x / 2) - eta * std::tan(x / 2)) / 2;
      w_err = std::max(w_err, detail::rel(superpotential_at(sys, 0, x), w));
      // W-derived potential equals the printed form under x -> pi - x
      const Real y = std::numbers::pi_v<Real> - x;
      const Real c = std::cos(y / 2), s = std::sin(y / 2);
      const Real printed = (mu * (mu - 1) / (c * c) + eta * (eta - 1) / (s * s)) / 4 - (mu + eta) * (mu + eta) / 4;
      v_err = std::max(v_err, detail::rel(potential_at(sys, 0, x), printed));
    }
    rec.within("W_0 = (mu cot(x/2) - eta tan(x/2))/2", -1, 0, w_err, tol.closed_form);
    rec.within("V_0 closed form", -1, 0, v_err, tol.closed_form);
  }
}

/// suite: ladder, fock, schrod or all. Checks come back sorted by suite, l, m.
inline Report run_verification(const FamilySpec &spec, const std::string &suite, const Tolerances &tol, unsigned seed) {
  if (suite != "ladder" && suite != "fock" && suite != "schrod" && suite != "all")
    throw std::invalid_argument("unknown suite '" + suite + "' (expected ladder, fock, schrod or all)");
  Report report;
  if (suite == "ladder" || suite == "all") ladder_suite(spec.family, tol, report);
  if (suite == "fock" || suite == "all") fock_suite(spec.family, tol, seed, report);
  if (suite == "schrod" || suite == "all") schrod_suite(spec, tol, report);
  std::stable_sort(report.checks.begin(), report.checks.end(), [](const Check &a, const Check &b) {
    const int ra = detail::suite_rank(a.suite), rb = detail::suite_rank(b.suite);
    if (ra != rb) return ra < rb;
    if (a.l != b.l) return a.l < b.l;
    return a.m < b.m;
  });
  return report;
}

inline Json to_json(const Report &r, const FamilySpec &spec, const std::string &suite, Tolerances tol, unsigned seed) {
  Json checks = Json::array();
  for (const Check &c : r.checks) {
    Json j = {{"suite", c.suite}, {"identity", c.identity}};
    if (c.l >= 0) j["l"] = c.l;
    if (c.m >= 0) j["m"] = c.m;
    if (c.k >= 0) j["k"] = c.k;
    j["residual"] = c.residual;
    j["tolerance"] = c.tolerance;
    j["passed"] = c.passed;
    checks.push_back(j);
  }
  return {{"family", to_json(spec)},
          {"suite", suite},
          {"seed", seed},
          {"tolerances", tol.to_json()},
          {"summary", {{"total", r.checks.size()}, {"passed", r.checks.size() - r.failures()}, {"failed", r.failures()}}},
          {"result", r.passed() ? "pass" : "fail"},
          {"checks", checks}};
}

} // namespace hyperladder

#endif
