#include "pkp/field.hpp"

#include <string>

#include "pkp/error.hpp"

namespace pkp {

bool is_prime(std::uint64_t value) {
    if (value < 2) return false;
    if (value % 2 == 0) return value == 2;
    for (std::uint64_t d = 3; d * d <= value; d += 2) {
        if (value % d == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
    if (q >= (1U << 31) || !is_prime(q)) {
        throw InvalidParameters("q = " + std::to_string(q) + " is not a prime below 2^31");
    }
}

Elem PrimeField::inv(Elem a) const {
    if (a == 0) throw InvalidParameters("inverse of zero");
    std::int64_t r0 = q_, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const std::int64_t quot = r0 / r1;
        std::int64_t tmp = r0 - quot * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - quot * t1;
        t0 = t1;
        t1 = tmp;
    }
    return reduce(t0);
}

Elem PrimeField::pow(Elem base, std::uint64_t exponent) const noexcept {
    Elem result = 1 % q_;
    while (exponent != 0) {
        if (exponent & 1U) result = mul(result, base);
        base = mul(base, base);
        exponent >>= 1U;
    }
    return result;
}

Elem PrimeField::dot(std::span<const Elem> x, std::span<const Elem> y) const noexcept {
    // Products are < 2^62; reduce every few terms to stay inside 64 bits.
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += static_cast<std::uint64_t>(x[i]) * y[i];
        if ((i & 1U) == 1U) acc %= q_;
    }
    return static_cast<Elem>(acc % q_);
}

}  // namespace pkp
