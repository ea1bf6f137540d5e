#pragma once

// Exact rationals used for every coefficient, exponent and coordinate.

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kswall {

using Rational = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw Error("zero denominator");
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Accepts "p", "p/q" and finite decimals such as "-1.25".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& v) {
    const auto first = v.find_first_not_of(" \t");
    const auto last = v.find_last_not_of(" \t");
    v = first == std::string::npos ? std::string{} : v.substr(first, last - first + 1);
  };
  trim(s);
  if (s.empty()) throw ParseError("empty rational");

  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw ParseError("malformed rational '" + s + "'");
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t scale = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw ParseError("malformed rational '" + s + "'");
    mpz_class num;
    if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0)
      throw ParseError("malformed rational '" + s + "'");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool sign = (c == '-' || c == '+') && (i == 0 || s[i - 1] == '/');
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || sign))
      throw ParseError("malformed rational '" + s + "'");
  }
  std::string normalized;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!(s[i] == '+' && (i == 0 || s[i - 1] == '/'))) normalized += s[i];

  Rational r;
  if (r.set_str(normalized, 10) != 0) throw ParseError("malformed rational '" + s + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace kswall
