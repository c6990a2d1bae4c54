#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "winofir/errors.hpp"

namespace winofir {

// Exact arbitrary-precision rational scalar. Kept in lowest terms with a
// positive denominator by the backend, so equality is decidable and the
// verification suites never depend on tolerances.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational halve(const Rational& v) { return v / 2; }
inline double halve(double v) { return v * 0.5; }

BigInt numerator_of(const Rational& v);
BigInt denominator_of(const Rational& v);

// Accepts "3", "-3/2" and decimal forms like "1.5" or "-.25".
// No exponent notation; use the float64 backend for that.
Rational parse_rational(std::string_view text);

// Integers print as "3", everything else as "num/den".
std::string format_rational(const Rational& v);

// Exact value of a finite binary64 number.
Rational rational_from_double(double v);

// Nearest binary64 value.
double rational_to_double(const Rational& v);

}  // namespace winofir
