#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "pkp/error.hpp"
#include "pkp/instance.hpp"
#include "pkp/rng.hpp"

namespace pkp::testing {

/// Generated instance whose extended system has full rank, plus that system.
struct Planted {
    PkpInstance instance;
    ExtendedSystem system;
};

inline Planted planted_instance(std::uint32_t q, std::size_t n, std::size_t m, std::uint64_t seed) {
    RandomStream root(seed);
    for (std::uint64_t attempt = 0;; ++attempt) {
        RandomStream rng = root.split(attempt);
        PkpInstance instance = generate_instance(q, n, m, rng, [](std::string_view) {});
        try {
            ExtendedSystem system = extend(instance);
            return Planted{std::move(instance), std::move(system)};
        } catch (const InvalidParameters&) {
        }
    }
}

/// The rearrangement planted(c) that satisfies the extended system.
inline Vector planted_vector(const PkpInstance& instance) {
    return instance.planted->apply(instance.c);
}

struct SampleStats {
    double mean;
    double stderr_mean;
};

inline SampleStats sample_stats(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double var = xs.size() > 1 ? ss / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
}

}  // namespace pkp::testing
