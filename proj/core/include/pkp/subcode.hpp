#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pkp/instance.hpp"
#include "pkp/matrix.hpp"
#include "pkp/rng.hpp"

namespace pkp {

/// d-dimensional subcode given by a generator matrix, with its support.
struct Subcode {
    Matrix generator;
    std::vector<std::size_t> support;

    std::size_t dimension() const noexcept { return generator.rows(); }
    std::size_t support_size() const noexcept { return support.size(); }
};

/// Bounds on the mean number of d-dimensional subcodes with support size w
/// of a random [n, k] code, both in log2.
struct SubcodeCountBounds {
    double lower_log2;
    double upper_log2;
};

/// log2 of the Gaussian binomial [k choose d]_q.
double log2_gaussian_binomial(std::uint64_t k, std::uint64_t d, std::uint64_t q);

/// Throws InvalidParameters unless 1 <= d <= min(w, k), w <= n and k <= n.
SubcodeCountBounds count_bounds(std::size_t n, std::size_t k, std::size_t w, std::size_t d, std::uint64_t q);

/// C(w,d) C(n-w,k-d) / C(n,k): chance that one ISD iteration catches a given subcode.
double isd_success_probability(std::size_t n, std::size_t k, std::size_t d, std::size_t w);

/// log2 of (k^3 + C(k,d)) / (1 - (1 - p)^N), N the lower count bound.
/// +inf when no iteration can succeed.
double isd_cost(std::size_t n, std::size_t k, std::size_t w, std::size_t d, std::uint64_t q);

/// Iterations needed to push the residual failure probability below 2^-10.
std::size_t default_isd_iterations(std::size_t n, std::size_t k, std::size_t w, std::size_t d, std::uint64_t q);

/// One randomized ISD iteration on the code generated by G (k x n, full rank):
/// permute columns, take the systematic form on the first k, and scan the
/// d-subsets of rows (lexicographically) for one whose redundancy part has
/// support exactly w - d. nullopt on RREF failure or when no subset fits.
std::optional<Subcode> isd_iteration(const Matrix& G, std::size_t w, std::size_t d, RandomStream& rng);

struct FindSubcodeOptions {
    /// 0 picks default_isd_iterations().
    std::size_t max_iterations = 0;
    WarningSink warn;
};

struct FindSubcodeResult {
    std::optional<Subcode> subcode;
    std::size_t iterations = 0;
};

/// Repeats isd_iteration and double-checks each hit: rank d, support size w,
/// rows inside the row space of G.
FindSubcodeResult find_subcode(const Matrix& G, std::size_t w, std::size_t d, RandomStream& rng,
                               const FindSubcodeOptions& options = {});

}  // namespace pkp
