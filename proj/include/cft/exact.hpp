#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <string>

namespace cft {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::rational<BigInt>;

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

// (2m-1)!! = (2m)!/(2^m m!); odd_double_factorial(k) computes k!! for odd k.
inline BigInt odd_double_factorial(long k) {
    if (k <= 0) return 1;  // (-1)!! = 1 by convention
    BigInt r = 1;
    for (long j = k; j >= 1; j -= 2) r *= j;
    return r;
}

inline double to_double(const BigRational& q) {
    return static_cast<double>(boost::multiprecision::cpp_rational(
        q.numerator(), q.denominator()));
}

inline std::string to_string(const BigInt& n) { return n.str(); }

}  // namespace cft
