// hyperladder: describe families, run identity suites, sample wavefunctions and coherent states.
//
// Exit codes: 0 success, 1 validation error, 2 verification failure, 3 I/O error.

#include <hyperladder/fock.hpp>
#include <hyperladder/io.hpp>
#include <hyperladder/ladder.hpp>
#include <hyperladder/schrodinger.hpp>
#include <hyperladder/verify.hpp>

#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace hyperladder;

namespace {

enum Exit { ok = 0, validation = 1, verification = 2, io = 3 };

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string family;
  std::string preset;
  std::vector<std::string> params;
  std::vector<std::string> tolerances;
  std::string format;
  std::string out;
  std::string suite = "all";
  std::string what = "wavefunction";
  std::string z = "1";
  unsigned l = 0, m = 0, trunc = 60, grid_n = 200, lmax = 10;
};

std::pair<std::string, std::string> split_kv(const std::string &kv, const char *flag) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw parse_error(std::string(flag) + " expects key=value, got '" + kv + "'");
  return {kv.substr(0, eq), kv.substr(eq + 1)};
}

FamilySpec load_family(const Options &o) {
  if (!o.family.empty() && !o.preset.empty()) throw parse_error("give either --family or --preset, not both");
  if (!o.family.empty()) {
    if (!o.params.empty()) throw parse_error("--param applies to --preset only");
    std::string text = o.family;
    if (text.find('{') == std::string::npos) {
      std::ifstream in(o.family);
      if (!in) throw io_error("cannot read family spec file '" + o.family + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    return family_from_json_text(text);
  }
  if (o.preset.empty()) throw parse_error("a family is required: use --preset <name> or --family <path|json>");
  std::map<std::string, Rational> params;
  for (const auto &kv : o.params) {
    const auto [k, v] = split_kv(kv, "--param");
    params[k] = parse_rational(v);
  }
  return preset_family(o.preset, params);
}

Tolerances load_tolerances(const Options &o) {
  Tolerances t;
  for (const auto &kv : o.tolerances) {
    const auto [k, v] = split_kv(kv, "--tol");
    t.tighten(k, to_floating<double>(parse_rational(v)));
  }
  return t;
}

/// "1", "-0.5", "i", "2i", "1+2i", "0.5-1.5i".
std::complex<double> parse_complex(std::string s) {
  std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
  if (s.empty()) throw parse_error("--z is empty");
  if (s.back() != 'i') return to_floating<double>(parse_rational(s));
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
  const std::string re = split == std::string::npos ? "0" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {to_floating<double>(parse_rational(re)), to_floating<double>(parse_rational(im))};
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const Options &o, const std::string &text) {
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw io_error("failed writing to standard output");
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw io_error("cannot open output file '" + o.out + "'");
  f << text;
  f.close();
  if (!f) throw io_error("failed writing output file '" + o.out + "'");
}

int cmd_describe(const Options &o) {
  const FamilySpec spec = load_family(o);
  const Family &f = spec.family;
  const AlgebraClass algebra = classify_algebra(f);
  std::ostringstream os;
  if (o.format == "json") {
    Json eig = Json::array();
    for (unsigned l = 0; l <= o.lmax; ++l) eig.push_back(to_string(f.eigenvalue(l)));
    Json j = {{"family", to_json(spec)},
              {"class", to_string(f.class_tag())},
              {"weight", f.weight().str()},
              {"zeroth_moment", static_cast<double>(f.zeroth_moment())},
              {"eigenvalues", eig},
              {"algebra", to_string(algebra)}};
    os << j.dump(2) << "\n";
  } else {
    os << "family:   " << f.name() << "\n"
       << "class:    " << to_string(f.class_tag()) << "\n"
       << "sigma:    " << f.sigma().str() << "\n"
       << "tau:      " << f.tau().str() << "\n"
       << "interval: (" << f.interval().a.str() << ", " << f.interval().b.str() << ")\n"
       << "weight:   " << f.weight().str() << "\n"
       << "m0:       " << fmt17(static_cast<double>(f.zeroth_moment())) << "\n"
       << "algebra:  " << to_string(algebra) << "\n"
       << "lambda:  ";
    for (unsigned l = 0; l <= o.lmax; ++l) os << " " << to_string(f.eigenvalue(l));
    os << "\n";
  }
  emit(o, os.str());
  return ok;
}

int cmd_verify(const Options &o) {
  const FamilySpec spec = load_family(o);
  const Tolerances tol = load_tolerances(o);
  const unsigned seed = seed_from_env();
  const Report report = run_verification(spec, o.suite, tol, seed);
  std::ostringstream os;
  if (o.format == "json") {
    os << to_json(report, spec, o.suite, tol, seed).dump(2) << "\n";
  } else {
    for (const Check &c : report.checks)
      if (!c.passed)
        os << "FAIL " << c.suite << ": " << c.identity << " l=" << c.l << " m=" << c.m << " k=" << c.k
           << " residual " << fmt17(c.residual) << " > " << fmt17(c.tolerance) << "\n";
    os << "suite " << o.suite << " on " << spec.family.name() << ": " << report.checks.size() << " checks, "
       << report.checks.size() - report.failures() << " passed, " << report.failures() << " failed\n";
  }
  emit(o, os.str());
  return report.passed() ? ok : verification;
}

std::string coherent_csv(const CoherentState &cs, const Family &f, unsigned grid_n) {
  std::ostringstream os;
  os << "s,re,im\n";
  for (const auto &p : coherent_profile(cs, f, grid_n)) os << fmt17(p.s) << "," << fmt17(p.value.real()) << "," << fmt17(p.value.imag()) << "\n";
  return os.str();
}

int cmd_sample(const Options &o) {
  const FamilySpec spec = load_family(o);
  const Family &f = spec.family;
  if (o.what == "coherent") {
    const CoherentState cs = coherent_state(f, o.m, parse_complex(o.z), o.trunc);
    if (o.format == "json") {
      Json samples = Json::array();
      for (const auto &p : coherent_profile(cs, f, o.grid_n)) samples.push_back({p.s, p.value.real(), p.value.imag()});
      emit(o, Json{{"state", to_json(cs)}, {"columns", {"s", "re", "im"}}, {"samples", samples}}.dump(2) + "\n");
    } else {
      emit(o, coherent_csv(cs, f, o.grid_n));
    }
    return ok;
  }

  const SchrodingerSystem sys = make_system(f);
  const std::vector<Real> grid = interior_grid(sys, o.grid_n);
  std::vector<Real> values;
  std::string column;
  if (o.what == "wavefunction") {
    values = wavefunction(sys, o.l, o.m, grid);
    column = "psi";
  } else if (o.what == "potential") {
    values = potential(sys, o.m, grid);
    column = "V";
  } else if (o.what == "superpotential") {
    values = superpotential(sys, o.m, grid);
    column = "W";
  } else {
    throw parse_error("--what must be wavefunction, potential, superpotential or coherent, got '" + o.what + "'");
  }
  if (o.format == "json") {
    Json rows = Json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) rows.push_back({static_cast<double>(grid[i]), static_cast<double>(values[i])});
    Json j = {{"system", system_descriptor(sys, spec, o.m)}, {"columns", {"x", column}}, {"samples", rows}};
    if (o.what == "wavefunction") j["l"] = o.l;
    emit(o, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    write_columns_csv(os, {"x", column}, {grid, values});
    emit(o, os.str());
  }
  return ok;
}

int cmd_coherent(const Options &o) {
  const FamilySpec spec = load_family(o);
  const CoherentState cs = coherent_state(spec.family, o.m, parse_complex(o.z), o.trunc);
  if (o.format == "csv")
    emit(o, coherent_csv(cs, spec.family, o.grid_n));
  else
    emit(o, to_json(cs).dump(2) + "\n");
  return ok;
}

void add_family_options(CLI::App *sub, Options &o) {
  sub->add_option("--family", o.family, "family spec: JSON text or a path to a JSON file");
  sub->add_option("--preset", o.preset, "legendre, jacobi, laguerre, hermite or poschl-teller");
  sub->add_option("--param", o.params, "preset parameter key=value (alpha, beta, mu, eta)");
  sub->add_option("--out", o.out, "write output here instead of stdout");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Ladder operators, Schrodinger partners and coherent states for hypergeometric-type families"};
  app.set_config("--config", "", "TOML/INI file with option values (command-line flags win)");
  app.require_subcommand(1);
  Options o;

  auto *describe = app.add_subcommand("describe", "class, weight, eigenvalues and algebra of a family");
  add_family_options(describe, o);
  describe->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  describe->add_option("--l", o.lmax, "largest l in the eigenvalue table")->capture_default_str();

  auto *verify = app.add_subcommand("verify", "run an identity suite; exit 2 if any check fails");
  add_family_options(verify, o);
  verify->add_option("--suite", o.suite, "ladder, fock, schrod or all")->capture_default_str()->check(CLI::IsMember({"ladder", "fock", "schrod", "all"}));
  verify->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--tol", o.tolerances, "tighten a tolerance, key=value");

  auto *sample = app.add_subcommand("sample", "sampled wavefunction, potential, superpotential or coherent profile");
  add_family_options(sample, o);
  sample->add_option("--what", o.what, "wavefunction, potential, superpotential or coherent")->capture_default_str();
  sample->add_option("--l", o.l, "l index")->capture_default_str();
  sample->add_option("--m", o.m, "m index")->capture_default_str();
  sample->add_option("--z", o.z, "coherent-state label, e.g. 1, 0.5-2i")->capture_default_str();
  sample->add_option("--trunc", o.trunc, "coherent-state truncation N")->capture_default_str()->check(CLI::PositiveNumber);
  sample->add_option("--grid-n", o.grid_n, "number of sample points")->capture_default_str()->check(CLI::Range(2u, 1000000u));
  sample->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto *coherent = app.add_subcommand("coherent", "truncated coherent state |z> as a JSON state vector or CSV profile");
  add_family_options(coherent, o);
  coherent->add_option("--m", o.m, "m index")->capture_default_str();
  coherent->add_option("--z", o.z, "coherent-state label, e.g. 1, 0.5-2i")->capture_default_str();
  coherent->add_option("--trunc", o.trunc, "truncation N")->capture_default_str()->check(CLI::PositiveNumber);
  coherent->add_option("--grid-n", o.grid_n, "profile points for csv output")->capture_default_str()->check(CLI::Range(2u, 1000000u));
  coherent->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::FileError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return io;
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return validation;
  }

  try {
    if (*describe) return cmd_describe(o);
    if (*verify) return cmd_verify(o);
    if (*sample) return cmd_sample(o);
    return cmd_coherent(o);
  } catch (const io_error &e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return io;
  } catch (const family_error &e) {
    std::cerr << "invalid family: " << e.what() << "\n";
    return validation;
  } catch (const parse_error &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return validation;
  } catch (const std::logic_error &e) {
    // invalid_argument, out_of_range and domain errors
    std::cerr << "error: " << e.what() << "\n";
    return validation;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return validation;
  }
}
