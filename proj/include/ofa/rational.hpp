#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ofa {

using Rational = boost::multiprecision::cpp_rational;

// Parses a plain decimal literal ("0.25", "3", "-1.5e-2") into the exact
// rational it denotes. Throws ConfigInvalid on malformed input.
Rational parse_decimal(std::string_view text);

// Exact rational for the shortest round-trip decimal representation of v.
Rational rational_from_double(double v);

double to_double(const Rational& r);

std::string to_string(const Rational& r);

}  // namespace ofa
