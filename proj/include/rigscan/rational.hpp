#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

// Exact rational arithmetic support: the oracle's number type, directed
// rational<->binary64 conversions, and exact decimal parsing of parameters.

namespace rigscan {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a finite double.
Rational rational_of(double x);

/// Largest double <= v ("round toward -inf").
double to_double_down(const Rational& v);

/// Smallest double >= v.
double to_double_up(const Rational& v);

bool is_representable64(const Rational& v);

/// Exact parse of "123", "0.25", "2.5e-3" or "a/b".  Throws on malformed
/// input, naming the offending text.
Rational rational_from_string(std::string_view s);

std::string rational_to_string(const Rational& v);

/// 2^k as a rational, k may be negative.
Rational pow2(long k);

Int binomial_int(unsigned long n, unsigned long k);

/// First `count` decimal digits of v in [0,1) after the point, plus whether
/// anything nonzero remains beyond them.
struct DecimalDigits {
    std::string digits;
    bool remainder_nonzero;
};
DecimalDigits decimal_digits(const Rational& v, unsigned count);

} // namespace rigscan
