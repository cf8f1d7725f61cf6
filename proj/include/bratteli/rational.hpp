#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace bratteli {

/// Exact rational scalar. Every identity in the library is exact, so there is
/// no tolerance parameter anywhere; arbitrary precision keeps property tests
/// honest even with adversarial coefficients.
using Rational = boost::multiprecision::cpp_rational;

/// "3/2" when the denominator is not 1, otherwise just "3".
inline std::string rational_string(const Rational& r) { return r.str(); }

inline Rational rational_from_string(const std::string& s) { return Rational(s); }

}  // namespace bratteli
