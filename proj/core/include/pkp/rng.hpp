#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace pkp {

/// Seeded random stream. Child streams derived with split() are
/// independent of how much the parent has been consumed, so every stage
/// of a run is reproducible on its own.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed = 0) : seed_(seed), engine_(mix(seed)) {}

    std::uint64_t seed() const noexcept { return seed_; }

    RandomStream split(std::string_view label) const;
    RandomStream split(std::uint64_t index) const;

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);

    std::mt19937_64& engine() noexcept { return engine_; }

    static std::uint64_t mix(std::uint64_t x) noexcept;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace pkp
