#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "phfanon/error.hpp"

namespace phfanon {

// All probabilities in this library are exact rationals; no floating point
// enters any probability computation. Conversion to double happens only at
// the simulator comparison boundary and in human-oriented output.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical serialized form is "num/den" with the denominator always
// present, reduced, den > 0 ("0/1", "1/1", "19/30").
inline std::string to_fraction_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

inline Rational rational_from_string(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    const BigInt num(text.substr(0, slash));
    const BigInt den(text.substr(slash + 1));
    if (den <= 0) throw Error(ErrorCode::Parse, "denominator must be positive: " + text);
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw Error(ErrorCode::Parse, "not a rational: " + text);
  }
}

inline double to_double(const Rational& value) {
  return value.convert_to<double>();
}

}  // namespace phfanon
