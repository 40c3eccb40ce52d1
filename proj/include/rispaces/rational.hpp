#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace rispaces {

/// Exact rational used for every breakpoint on [0,1].
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact rational value of a finite double (every double is dyadic).
Rational exact_rational(double x);

/// Parses "num/den", "num" or a plain decimal such as "0.25".
Rational parse_rational(std::string_view text);

/// Formats as "num/den" (always with a denominator).
std::string format_rational(const Rational& r);

}  // namespace rispaces
