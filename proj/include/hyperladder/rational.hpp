#ifndef HYPERLADDER_RATIONAL_HPP
#define HYPERLADDER_RATIONAL_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace hyperladder {

/// Exact scalar. mpq_class keeps numerator/denominator coprime with a
/// positive denominator after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

class parse_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Top 64 bits of |z| as an exact long double, scaled back by the dropped bits.
inline long double integer_to_long_double(const Integer &z) {
  if (z == 0) return 0.0L;
  const std::size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
  Integer mag = abs(z);
  long shift = 0;
  if (bits > 64) {
    shift = static_cast<long>(bits - 64);
    mpz_tdiv_q_2exp(mag.get_mpz_t(), mag.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  }
  static_assert(sizeof(mp_limb_t) == 8, "64-bit GMP limbs expected");
  const std::uint64_t top = mpz_getlimbn(mag.get_mpz_t(), 0);
  long double r = std::ldexp(static_cast<long double>(top), static_cast<int>(shift));
  return z < 0 ? -r : r;
}

} // namespace detail

/// Rational to floating point with roughly full precision of the target type.
template <typename T = double> T to_floating(const Rational &q) {
  if constexpr (std::is_same_v<T, double>) {
    return q.get_d();
  } else {
    if (q == 0) return T(0);
    // Scale so the integer quotient carries at least 66 significant bits.
    const long nbits = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
    const long dbits = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
    const long shift = std::max(0L, dbits - nbits + 66);
    Integer scaled = q.get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    Integer quot;
    mpz_tdiv_q(quot.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
    return static_cast<T>(std::ldexp(detail::integer_to_long_double(quot), static_cast<int>(-shift)));
  }
}

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational &q) { return q.get_str(10); }

/// Accepts "p", "p/q", decimal literals ("-0.25", "1.5e-3"). The value is exact.
inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw parse_error("empty rational literal");

  auto is_int = [](std::string_view v) {
    std::size_t i = (!v.empty() && (v[0] == '-' || v[0] == '+')) ? 1 : 0;
    if (i >= v.size()) return false;
    for (; i < v.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string v) { return (!v.empty() && v[0] == '+') ? v.substr(1) : v; };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw parse_error("malformed rational literal '" + s + "'");
    Integer d(strip_plus(den), 10);
    if (d == 0) throw parse_error("zero denominator in '" + s + "'");
    Rational q(Integer(strip_plus(num), 10), d);
    q.canonicalize();
    return q;
  }
  if (is_int(s)) return Rational(Integer(strip_plus(s), 10));

  // Decimal with optional exponent.
  std::string mant = s;
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mant = s.substr(0, e);
    std::string ex = s.substr(e + 1);
    if (!is_int(ex)) throw parse_error("malformed exponent in '" + s + "'");
    exp10 = std::stol(ex);
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant = mant.substr(1);
  }
  std::string digits;
  long frac = 0;
  bool seen_dot = false;
  for (char c : mant) {
    if (c == '.') {
      if (seen_dot) throw parse_error("malformed decimal '" + s + "'");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac;
    } else {
      throw parse_error("malformed number '" + s + "'");
    }
  }
  if (digits.empty()) throw parse_error("malformed number '" + s + "'");
  Integer value(digits, 10);
  const long scale = exp10 - frac;
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  Rational q = scale >= 0 ? Rational(value * ten_pow) : Rational(value, ten_pow);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

/// Exact square root of a non-negative rational, if it is a perfect square.
inline std::optional<Rational> rational_sqrt(const Rational &q) {
  if (q < 0) return std::nullopt;
  Integer n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational out(rn, rd);
  out.canonicalize();
  return out;
}

inline Rational factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

} // namespace hyperladder

#endif
