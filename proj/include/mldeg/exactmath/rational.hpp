#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

#include "mldeg/error.hpp"

namespace mldeg {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return Integer(0);
  return boost::multiprecision::lcm(a, b);
}

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }
inline Rational abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

/// Parses "p", "-p" or "p/q". Rejects zero denominators and junk.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { throw Error(ErrorCode::InvalidInput, "malformed rational '" + s + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  auto valid_int = [](std::string_view t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto to_int = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return Integer(t);
  };
  if (slash == std::string::npos) {
    if (!valid_int(s)) bad();
    return Rational(to_int(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) bad();
  Integer d = to_int(den);
  if (d == 0) throw Error(ErrorCode::InvalidInput, "zero denominator in '" + s + "'");
  return Rational(to_int(num), d);
}

inline std::string to_string(const Rational& q) {
  if (denominator_of(q) == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

}  // namespace mldeg
