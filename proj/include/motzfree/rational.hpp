#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "motzfree/error.hpp"

namespace motzfree {

// mpq_class keeps results of arithmetic in canonical form; values built from
// raw numerator/denominator pairs go through make_rational.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error(Errc::invalid_argument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q" or an integer string. Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
    throw Error(Errc::invalid_argument, "not a rational: '" + std::string(text) + "'");
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class zn(n, 10), zd(std::string(den), 10);
  if (zd == 0) throw Error(Errc::invalid_argument, "zero denominator in '" + std::string(text) + "'");
  Rational r(zn, zd);
  r.canonicalize();
  return r;
}

/// Canonical text form: "p/q" with q > 1, or the bare integer.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline Rational factorial(unsigned k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return Rational(f);
}

}  // namespace motzfree
