#include "pkp/rng.hpp"

namespace pkp {

std::uint64_t RandomStream::mix(std::uint64_t x) noexcept {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RandomStream RandomStream::split(std::string_view label) const {
    // FNV-1a over the label, then folded into the parent seed
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : label) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return RandomStream(mix(seed_ ^ mix(h)));
}

RandomStream RandomStream::split(std::uint64_t index) const {
    return RandomStream(mix(seed_ + mix(index + 0x5851f42d4c957f2dULL)));
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
    std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
    return dist(engine_);
}

}  // namespace pkp
