#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>

namespace pkp {

// All counts are carried as log2 of the real value.

inline double log2_factorial(std::uint64_t n) {
    return std::lgamma(static_cast<double>(n) + 1.0) / std::log(2.0);
}

/// log2 C(n, k); -inf when k > n.
inline double log2_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return -std::numeric_limits<double>::infinity();
    return log2_factorial(n) - log2_factorial(k) - log2_factorial(n - k);
}

/// log2 of n!/(n-l)!, the number of length-l arrangements of n distinct items.
inline double log2_arrangements(std::uint64_t n, std::uint64_t l) {
    if (l > n) return -std::numeric_limits<double>::infinity();
    return log2_factorial(n) - log2_factorial(n - l);
}

/// log2(2^a + 2^b + ...) without overflow.
inline double log2_sum(std::span<const double> terms) {
    double top = -std::numeric_limits<double>::infinity();
    for (double t : terms) top = std::max(top, t);
    if (!std::isfinite(top)) return top;
    double acc = 0.0;
    for (double t : terms) acc += std::exp2(t - top);
    return top + std::log2(acc);
}

inline double log2_sum(std::initializer_list<double> terms) {
    return log2_sum(std::span<const double>(terms.begin(), terms.size()));
}

/// log2(q^a - 1) for a >= 1.
inline double log2_qpow_minus_one(double log2q, std::uint64_t a) {
    const double x = log2q * static_cast<double>(a);
    return x + std::log1p(-std::exp2(-x)) / std::log(2.0);
}

}  // namespace pkp
