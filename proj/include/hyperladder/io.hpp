#ifndef HYPERLADDER_IO_HPP
#define HYPERLADDER_IO_HPP

#include "family.hpp"
#include "fock.hpp"
#include "half_power.hpp"
#include "schrodinger.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <map>
#include <optional>
#include <string>

namespace hyperladder {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational &q) { return to_string(q); }

inline Json to_json(const Polynomial &p) {
  Json arr = Json::array();
  for (const auto &c : p.coefficients()) arr.push_back(to_string(c));
  return arr;
}

inline Json to_json(const HalfPowerFunction &u) { return {{"poly", to_json(u.poly())}, {"halfpower", u.halfpower()}}; }

inline Json to_json(const Endpoint &e) { return e.str(); }

/// A family spec that remembers how it was asked for, so reports can echo it.
struct FamilySpec {
  Family family;
  std::string preset;                     // empty for explicit sigma/tau
  std::map<std::string, Rational> params; // preset parameters
};

namespace detail {

inline Rational rational_field(const Json &j, const std::string &field) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const parse_error &e) {
      throw parse_error("field '" + field + "': " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.dump(), 10);
  if (j.is_number_float()) return parse_rational(j.dump());
  throw parse_error("field '" + field + "' must be a rational given as a string like \"-3/4\" or a number");
}

inline Polynomial polynomial_field(const Json &j, const std::string &field) {
  if (!j.is_array()) throw parse_error("field '" + field + "' must be an array of coefficients, lowest degree first");
  std::vector<Rational> c;
  for (std::size_t k = 0; k < j.size(); ++k) c.push_back(rational_field(j[k], field + "[" + std::to_string(k) + "]"));
  return Polynomial(std::move(c));
}

inline Endpoint endpoint_field(const Json &j, const std::string &field) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "-inf" || s == "-infinity") return Endpoint::minus_infinity();
    if (s == "inf" || s == "+inf" || s == "infinity") return Endpoint::plus_infinity();
  }
  return Endpoint::at(rational_field(j, field));
}

inline Rational param_or(const std::map<std::string, Rational> &params, const std::string &key, const Rational &fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

inline void require_known(const std::map<std::string, Rational> &params, std::initializer_list<const char *> known,
                          const std::string &preset) {
  for (const auto &[k, v] : params) {
    bool ok = false;
    for (const char *name : known) ok = ok || k == name;
    if (!ok) throw parse_error("preset '" + preset + "' has no parameter '" + k + "'");
  }
}

} // namespace detail

/// legendre, jacobi(alpha, beta), laguerre(alpha), hermite, poschl-teller(mu, eta).
inline FamilySpec preset_family(const std::string &name, const std::map<std::string, Rational> &params = {}) {
  using detail::param_or;
  const Rational half(1, 2);
  if (name == "legendre") {
    detail::require_known(params, {}, name);
    return {presets::legendre(), name, params};
  }
  if (name == "jacobi") {
    detail::require_known(params, {"alpha", "beta"}, name);
    std::map<std::string, Rational> p{{"alpha", param_or(params, "alpha", 0)}, {"beta", param_or(params, "beta", 0)}};
    return {presets::jacobi(p["alpha"], p["beta"]), name, p};
  }
  if (name == "laguerre") {
    detail::require_known(params, {"alpha"}, name);
    std::map<std::string, Rational> p{{"alpha", param_or(params, "alpha", 0)}};
    return {presets::laguerre(p["alpha"]), name, p};
  }
  if (name == "hermite") {
    detail::require_known(params, {}, name);
    return {presets::hermite(), name, params};
  }
  if (name == "poschl-teller") {
    detail::require_known(params, {"mu", "eta"}, name);
    std::map<std::string, Rational> p{{"eta", param_or(params, "eta", 1)}, {"mu", param_or(params, "mu", 1)}};
    if (p["mu"] <= 0 || p["eta"] <= 0)
      throw std::invalid_argument("poschl-teller: mu and eta must be positive, got mu = " + to_string(p["mu"]) +
                                  ", eta = " + to_string(p["eta"]));
    Family f = presets::jacobi(p["mu"] - half, p["eta"] - half);
    return {f, name, p};
  }
  throw parse_error("unknown preset '" + name + "' (expected legendre, jacobi, laguerre, hermite or poschl-teller)");
}

/// {"preset": name, "params": {...}} or {"sigma": [...], "tau": [...], "interval": {"a": .., "b": ..}}.
inline FamilySpec family_from_json(const Json &j) {
  if (!j.is_object()) throw parse_error("family spec must be a JSON object");
  if (j.contains("preset")) {
    if (!j["preset"].is_string()) throw parse_error("field 'preset' must be a string");
    std::map<std::string, Rational> params;
    if (j.contains("params")) {
      if (!j["params"].is_object()) throw parse_error("field 'params' must be an object");
      for (const auto &[k, v] : j["params"].items()) params[k] = detail::rational_field(v, "params." + k);
    }
    return preset_family(j["preset"].get<std::string>(), params);
  }
  for (const char *field : {"sigma", "tau", "interval"})
    if (!j.contains(field)) throw parse_error(std::string("family spec is missing field '") + field + "'");
  const Polynomial sigma = detail::polynomial_field(j["sigma"], "sigma");
  const Polynomial tau = detail::polynomial_field(j["tau"], "tau");
  const Json &iv = j["interval"];
  if (!iv.is_object() || !iv.contains("a") || !iv.contains("b"))
    throw parse_error("field 'interval' must be an object with keys 'a' and 'b'");
  const Interval interval{detail::endpoint_field(iv["a"], "interval.a"), detail::endpoint_field(iv["b"], "interval.b")};
  const std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "custom";
  return {validate_family(sigma, tau, interval, name), "", {}};
}

inline FamilySpec family_from_json_text(const std::string &text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw parse_error(std::string("family spec is not valid JSON: ") + e.what());
  }
  return family_from_json(j);
}

inline Json to_json(const Family &f) {
  return {{"name", f.name()},
          {"sigma", to_json(f.sigma())},
          {"tau", to_json(f.tau())},
          {"interval", {{"a", to_json(f.interval().a)}, {"b", to_json(f.interval().b)}}}};
}

inline Json to_json(const FamilySpec &spec) {
  Json j = to_json(spec.family);
  if (!spec.preset.empty()) {
    Json params = Json::object();
    for (const auto &[k, v] : spec.params) params[k] = to_string(v);
    j["preset"] = spec.preset;
    j["params"] = params;
  }
  return j;
}

inline Json real_json(Real v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return static_cast<double>(v);
}

/// {"m": m, "coeffs": {"n": [re, im], ...}}
inline Json to_json(const FockVector &v) {
  Json coeffs = Json::object();
  for (const auto &[n, c] : v.coeffs) coeffs[std::to_string(n)] = Json::array({c.real(), c.imag()});
  return {{"m", v.m}, {"coeffs", coeffs}};
}

inline FockVector fock_vector_from_json(const Json &j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("coeffs")) throw parse_error("state vector needs fields 'm' and 'coeffs'");
  FockVector v{j["m"].get<unsigned>(), {}};
  for (const auto &[k, c] : j["coeffs"].items()) {
    if (!c.is_array() || c.size() != 2) throw parse_error("coefficient '" + k + "' must be [re, im]");
    v.coeffs[static_cast<unsigned>(std::stoul(k))] = {c[0].get<double>(), c[1].get<double>()};
  }
  return v;
}

inline Json to_json(const CoherentState &cs) {
  Json j = to_json(cs.vector());
  j["z"] = Json::array({cs.z.real(), cs.z.imag()});
  j["truncation"] = cs.truncation;
  j["normalizer"] = cs.normalizer;
  j["residual"] = cs.residual;
  j["tail_bound"] = cs.tail_bound;
  return j;
}

/// Family spec, sign, x-domain and m.
inline Json system_descriptor(const SchrodingerSystem &sys, const FamilySpec &spec, unsigned m) {
  const auto [lo, hi] = sys.map.x_domain();
  return {{"family", to_json(spec)},
          {"sign", sys.sign()},
          {"map", sys.map.kind_name()},
          {"x_domain", Json::array({real_json(lo), real_json(hi)})},
          {"m", m}};
}

} // namespace hyperladder

#endif
