#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace gul {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// C(n, k); zero outside 0 <= k <= n, so callers can use raw counts without
// guarding the degenerate corners.
inline BigInt binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

// Falling factorial (n)_k = n (n-1) ... (n-k+1).
inline BigInt falling(long long n, long long k) {
    BigInt r = 1;
    for (long long i = 0; i < k; ++i) r *= (n - i);
    return r;
}

inline double to_double(const Rational& q) {
    return q.convert_to<double>();
}

}  // namespace gul
