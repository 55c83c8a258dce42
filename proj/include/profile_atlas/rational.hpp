#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace patlas {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exact induced-density values are rationals; the alias keeps call sites
// readable without inventing a wrapper class.
using Density = Rat;

inline Int binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline Int falling_factorial(long long n, long long k) {
    Int r = 1;
    for (long long i = 0; i < k; ++i) r *= n - i;
    return r;
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// "a/b" for proper fractions, "a" for integers.
inline std::string rat_str(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace patlas
