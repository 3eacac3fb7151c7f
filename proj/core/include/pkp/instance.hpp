#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pkp/field.hpp"
#include "pkp/matrix.hpp"
#include "pkp/rng.hpp"

namespace pkp {

/// Bijection on {0, ..., n-1}. Applying it to a vector a gives
/// (a[p(0)], ..., a[p(n-1)]).
class Permutation {
public:
    Permutation() = default;
    /// Throws InvalidParameters unless `mapping` is a bijection.
    explicit Permutation(std::vector<std::size_t> mapping);

    static Permutation identity(std::size_t n);
    static Permutation random(std::size_t n, RandomStream& rng);

    std::size_t size() const noexcept { return map_.size(); }
    std::size_t operator[](std::size_t i) const { return map_[i]; }
    const std::vector<std::size_t>& mapping() const noexcept { return map_; }

    Permutation inverse() const;

    template <class T>
    std::vector<T> apply(std::span<const T> a) const {
        std::vector<T> out(map_.size());
        for (std::size_t i = 0; i < map_.size(); ++i) out[i] = a[map_[i]];
        return out;
    }
    Vector apply(const Vector& a) const { return apply<Elem>(std::span<const Elem>(a)); }

    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> map_;
};

/// (q, n, m, A, c) plus the planted solution when the instance was generated here.
struct PkpInstance {
    PrimeField field;
    std::size_t n;
    std::size_t m;
    Matrix A;
    Vector c;
    std::optional<Permutation> planted;
};

/// H = (A ; 1...1), s = (0, ..., 0, sum c). Solvers only ever see this and c.
struct ExtendedSystem {
    Matrix H;
    Vector s;

    std::size_t n() const noexcept { return H.cols(); }
    std::size_t r() const noexcept { return H.rows(); }
    const PrimeField& field() const noexcept { return H.field(); }
};

/// S_l(c): all length-l sequences of distinct entries of c, visited lazily in
/// lexicographic order of the index tuples.
class SampleSet {
public:
    SampleSet(std::size_t n, std::size_t length) : n_(n), length_(length) {}

    std::size_t n() const noexcept { return n_; }
    std::size_t length() const noexcept { return length_; }
    /// n!/(n-l)!, saturating at SIZE_MAX.
    std::size_t size() const noexcept;

    /// Calls fn(indices) for every arrangement.
    void for_each(const std::function<void(std::span<const std::size_t>)>& fn) const;

private:
    std::size_t n_;
    std::size_t length_;
};

using WarningSink = std::function<void(std::string_view)>;

/// log2 of the expected number of solutions n!/q^m of a random instance.
double log2_expected_solutions(std::uint32_t q, std::size_t n, std::size_t m);

/// Random instance with a planted solution: A uniform in GL_{m,n}, c~ drawn
/// from ker(A) with distinct entries, c = pi(c~). Emits a warning when
/// n! q^-m >= 1. Throws InvalidParameters for bad (q, n, m) and
/// SearchExhausted when no distinct-entry kernel vector turns up.
PkpInstance generate_instance(std::uint32_t q, std::size_t n, std::size_t m, RandomStream& rng,
                              const WarningSink& warn = {});

/// Throws InvalidParameters when the all-ones row is in the row space of A.
ExtendedSystem extend(const PkpInstance& instance);

/// Precomputed RREF(H, complement of J) for repeated completion of partial
/// solutions via the systematic relations.
class Reconstructor {
public:
    /// nullopt when H restricted to the complement of J is singular.
    static std::optional<Reconstructor> create(const ExtendedSystem& system, std::vector<std::size_t> J);

    const std::vector<std::size_t>& J() const noexcept { return J_; }
    const std::vector<std::size_t>& complement() const noexcept { return rest_; }

    /// Full vector agreeing with `partial` on J (in J order) and having syndrome s.
    Vector complete(std::span<const Elem> partial) const;

private:
    Reconstructor(PrimeField field, std::vector<std::size_t> J, std::vector<std::size_t> rest,
                  Matrix reduced, Vector rhs);

    PrimeField field_;
    std::vector<std::size_t> J_;
    std::vector<std::size_t> rest_;
    Matrix reduced_;
    Vector rhs_;
};

/// One-shot form of Reconstructor::complete.
std::optional<Vector> reconstruct(const ExtendedSystem& system, std::span<const std::size_t> J,
                                  std::span<const Elem> partial);

/// Checks that `candidate` is a rearrangement of `c`; returns the
/// permutation pi with pi(c) = candidate. Entries of c must be distinct.
std::optional<Permutation> match_arrangement(std::span<const Elem> c, std::span<const Elem> candidate);

/// true iff pi(c) A^T = 0. Throws InvalidParameters on size mismatch.
bool verify(const PkpInstance& instance, const Permutation& candidate);

/// Every permutation solving the instance, in lexicographic order.
/// Throws InvalidParameters when n exceeds `max_n`.
std::vector<Permutation> brute_force_solve(const PkpInstance& instance, std::size_t max_n = 10);

/// Text format: "PKP q n m", m rows of A, c, optional "SOLUTION i1 .. in" (1-based).
void write_instance(std::ostream& out, const PkpInstance& instance);
/// Throws FormatError on malformed input, InvalidParameters on semantic violations.
PkpInstance read_instance(std::istream& in);

}  // namespace pkp
