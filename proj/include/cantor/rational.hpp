#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace cantor {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// 2^-n as an exact rational.
inline Rational pow2_inv(std::size_t n) {
    BigInt den = 1;
    den <<= n;
    return Rational(BigInt(1), den);
}

/// Renders as "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace cantor
