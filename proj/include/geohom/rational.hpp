#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace geohom {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Accepts "7", "-3/4", "0.125", "-2.5".
Rational parse_rational(std::string_view text);

// Canonical text: "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& q);

std::int64_t floor_to_int(const Rational& q);
std::int64_t ceil_to_int(const Rational& q);
double to_double(const Rational& q);

}
