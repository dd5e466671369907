#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace dgsw {

// Exact arbitrary-precision rational scalar. Every computation in the
// library is exact; there is no floating point anywhere.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace dgsw
