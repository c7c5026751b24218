#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace relqc {

/// Exact rational scalar. Every quantity in the workbench is either an
/// integer or one of these; no floating point anywhere.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parse "p/q" or "p" (optional leading '-').
Rational parse_rational(const std::string& text);

/// Canonical form: "p" for integers, "p/q" otherwise, q > 0.
std::string format_rational(const Rational& value);

inline Rational rational_abs(const Rational& value) {
  return value < 0 ? Rational(-value) : value;
}

}  // namespace relqc
