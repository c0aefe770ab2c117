#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace isoconv {

// Arbitrary-precision fraction, always normalized (lowest terms, positive
// denominator).
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

Rational make_rational(long long num, long long den = 1);

// Accepts "p/q", an integer, or a decimal such as "0.125" / "-3.5e-2".
// Decimals map to the exact rational they denote. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Exact value of a finite double (every double is a dyadic rational).
Rational rational_from_double(double x);

Rational pow(const Rational& base, unsigned exponent);

double to_double(const Rational& q);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

}  // namespace isoconv
