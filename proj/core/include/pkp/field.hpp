#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pkp {

/// Residue in [0, q). Arithmetic goes through the owning PrimeField.
using Elem = std::uint32_t;
using Vector = std::vector<Elem>;

bool is_prime(std::uint64_t value);

/// GF(q) for a prime 2 <= q < 2^31.
class PrimeField {
public:
    /// Throws InvalidParameters when q is not a prime in range.
    explicit PrimeField(std::uint32_t q);

    std::uint32_t modulus() const noexcept { return q_; }

    Elem reduce(std::int64_t value) const noexcept {
        auto r = value % static_cast<std::int64_t>(q_);
        return static_cast<Elem>(r < 0 ? r + q_ : r);
    }
    Elem add(Elem a, Elem b) const noexcept {
        std::uint32_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + q_ - b; }
    Elem neg(Elem a) const noexcept { return a == 0 ? 0 : q_ - a; }
    Elem mul(Elem a, Elem b) const noexcept {
        return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % q_);
    }
    /// a + b*c
    Elem fma(Elem a, Elem b, Elem c) const noexcept {
        return static_cast<Elem>((a + static_cast<std::uint64_t>(b) * c) % q_);
    }
    /// Multiplicative inverse via extended Euclid. Throws on zero.
    Elem inv(Elem a) const;
    Elem pow(Elem base, std::uint64_t exponent) const noexcept;

    bool contains(Elem a) const noexcept { return a < q_; }

    /// x . y over GF(q); sizes must match.
    Elem dot(std::span<const Elem> x, std::span<const Elem> y) const noexcept;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t q_;
};

}  // namespace pkp
