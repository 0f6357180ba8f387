#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <cstdint>
#include <random>
#include <string>

#include "hypermatch/errors.hpp"

namespace hypermatch {

namespace mp = boost::multiprecision;

/// Arbitrary-precision integer and rational scalars. Everything numeric in the
/// library runs on these; there is no floating point on any code path.
using Int = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

inline Int floor_int(const Rational& r) {
  Int n = numerator(r);
  Int d = denominator(r);  // canonical form: d > 0
  Int q = n / d;           // truncates toward zero
  if (n < 0 && q * d != n) --q;
  return q;
}

inline Int ceil_int(const Rational& r) { return -floor_int(-r); }

inline bool is_integral(const Rational& r) { return denominator(r) == 1; }

/// Fractional part r - floor(r), always in [0, 1).
inline Rational frac_part(const Rational& r) { return r - Rational(floor_int(r)); }

namespace detail {
inline Int parse_int(const std::string& s) {
  if (s.empty()) throw ParseError("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw ParseError("sign without digits: '" + s + "'");
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw ParseError("bad integer literal: '" + s + "'");
  return Int(s);
}
}  // namespace detail

/// Parses "p/q" or a plain integer. The result is canonical; "1/0" is rejected.
inline Rational parse_rational(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(detail::parse_int(s));
  Int num = detail::parse_int(s.substr(0, slash));
  Int den = detail::parse_int(s.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator: '" + s + "'");
  return Rational(num) / Rational(den);
}

/// "p/q" when the denominator is not 1, plain integer otherwise.
inline std::string format_rational(const Rational& r) { return r.str(); }

/// Uniform draw from {0, 1, ..., bound-1} by rejection on the top bit block.
/// Exact: every residue has probability exactly 1/bound.
inline Int uniform_int_below(const Int& bound, std::mt19937_64& rng) {
  if (bound <= 0) throw InternalError("uniform_int_below: bound must be positive");
  if (bound == 1) return Int(0);
  const unsigned bits = msb(bound) + 1;
  const unsigned words = (bits + 63) / 64;
  for (;;) {
    Int draw = 0;
    for (unsigned i = 0; i < words; ++i) {
      draw <<= 64;
      draw += Int(static_cast<std::uint64_t>(rng()));
    }
    draw >>= (words * 64 - bits);
    if (draw < bound) return draw;
  }
}

}  // namespace hypermatch
