#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace rktree {

// Exact arithmetic carriers. cpp_rational keeps every value reduced with a
// positive denominator, which downstream order checks rely on: gamma*phi == 1
// must be an exact comparison, never a tolerance.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

BigInt factorial(unsigned n);

// Parses "p/q", an integer, or a finite decimal ("0.5" -> 1/2, taken
// literally). No exponent notation. Throws ValidationError on anything else,
// on q == 0, and on a non-positive denominator literal.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);  // "p/q", or just "p" when q == 1
std::string to_string(const RatVec& v);    // "(a, b, ...)"

double to_double(const Rational& r);
std::vector<double> to_double(const RatVec& v);

}  // namespace rktree
