#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace xpkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact parse of "17/20", "0.85", "-3", "2.5e-1".
Rational parse_rational(std::string_view text);

/// "7/8" (reduced); integers print without a denominator.
std::string to_fraction_string(const Rational& r);

/// Decimal rendering rounded half-up to `digits` fractional digits, trailing
/// zeros trimmed.
std::string to_decimal_string(const Rational& r, int digits = 6);

}  // namespace xpkit
