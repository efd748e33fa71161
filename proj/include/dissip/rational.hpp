#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>

namespace dissip {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::complex<double> to_complex(const Rational& r) {
  return {to_double(r), 0.0};
}

// Doubles are dyadic rationals, so this conversion is exact.
inline Rational rational_from_double(double x) { return Rational(x); }

// Parses "num/den" or "num"; both parts arbitrary-precision integers.
Rational parse_rational(const std::string& s);

// Canonical text form: "num" when den == 1, else "num/den".
std::string format_rational(const Rational& r);

}  // namespace dissip
