#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace ballotbox {

// Exact arbitrary-precision rational. Scores, certificate values, epsilon/delta
// parameters and distribution masses are all kept exact; floating point only
// appears where a logarithm is genuinely needed (divergences, sample sizes).
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

// Parses "0.15", "-3", "1/3", "2e-2" style tokens into an exact rational.
Rational parse_rational(const std::string& text);

// Renders num/den ("3/2") or a plain integer ("4").
std::string rational_to_string(const Rational& r);

} // namespace ballotbox
