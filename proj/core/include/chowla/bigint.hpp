#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace chowla {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using int128 = __int128;
using uint128 = unsigned __int128;

inline std::string to_string(const BigInt& v) { return v.str(); }

// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  const BigInt& num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// num/den for any nonzero den; cpp_rational itself rejects negative den.
inline Rational make_rational(const BigInt& num, const BigInt& den) {
  return den < 0 ? Rational(BigInt(-num), BigInt(-den)) : Rational(num, den);
}

std::string to_string(int128 v);
std::string to_string(uint128 v);

// Parses "p", "p/q" or a finite decimal such as "1.25" exactly.
Rational parse_rational(const std::string& text);

}  // namespace chowla
