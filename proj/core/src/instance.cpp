#include "pkp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "pkp/combinatorics.hpp"
#include "pkp/error.hpp"
#include "pkp/linalg.hpp"

namespace pkp {

Permutation::Permutation(std::vector<std::size_t> mapping) : map_(std::move(mapping)) {
    std::vector<bool> seen(map_.size(), false);
    for (auto v : map_) {
        if (v >= map_.size() || seen[v]) throw InvalidParameters("permutation is not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), std::size_t{0});
    return Permutation(std::move(m));
}

Permutation Permutation::random(std::size_t n, RandomStream& rng) {
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), std::size_t{0});
    // Fisher-Yates with our own index draws so the order is library independent
    for (std::size_t i = n; i > 1; --i) std::swap(m[i - 1], m[rng.below(i)]);
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
    Permutation p;
    p.map_ = std::move(inv);
    return p;
}

std::size_t SampleSet::size() const noexcept {
    if (length_ > n_) return 0;
    std::size_t total = 1;
    for (std::size_t i = 0; i < length_; ++i) {
        const std::size_t factor = n_ - i;
        if (total > std::numeric_limits<std::size_t>::max() / factor) return std::numeric_limits<std::size_t>::max();
        total *= factor;
    }
    return total;
}

void SampleSet::for_each(const std::function<void(std::span<const std::size_t>)>& fn) const {
    if (length_ > n_) return;
    std::vector<std::size_t> idx(length_);
    std::vector<bool> used(n_, false);
    // iterative depth-first walk; idx[depth] is the candidate at that level
    std::size_t depth = 0;
    if (length_ == 0) {
        fn(idx);
        return;
    }
    idx[0] = 0;
    for (;;) {
        std::size_t& cur = idx[depth];
        while (cur < n_ && used[cur]) ++cur;
        if (cur == n_) {
            if (depth == 0) return;
            --depth;
            used[idx[depth]] = false;
            ++idx[depth];
            continue;
        }
        if (depth + 1 == length_) {
            fn(idx);
            ++cur;
            continue;
        }
        used[cur] = true;
        ++depth;
        idx[depth] = 0;
    }
}

double log2_expected_solutions(std::uint32_t q, std::size_t n, std::size_t m) {
    return log2_factorial(n) - static_cast<double>(m) * std::log2(static_cast<double>(q));
}

namespace {

bool all_distinct(const Vector& v) {
    Vector sorted = v;
    std::ranges::sort(sorted);
    return std::ranges::adjacent_find(sorted) == sorted.end();
}

constexpr std::size_t kKernelResampleLimit = 1'000'000;

}  // namespace

PkpInstance generate_instance(std::uint32_t q, std::size_t n, std::size_t m, RandomStream& rng,
                              const WarningSink& warn) {
    const PrimeField field(q);
    if (m < 1 || m >= n) throw InvalidParameters("need 1 <= m < n");
    if (n > q) throw InvalidParameters("n > q: c cannot have pairwise distinct entries");
    const double expected = log2_expected_solutions(q, n, m);
    if (expected >= 0.0 && warn) {
        std::ostringstream msg;
        msg << "n!/q^m = 2^" << expected << " >= 1: instance is not in the hard regime";
        warn(msg.str());
    }

    RandomStream matrix_rng = rng.split("matrix");
    RandomStream kernel_rng = rng.split("kernel");
    RandomStream perm_rng = rng.split("permutation");

    Matrix A = random_full_rank(field, m, n, matrix_rng);
    const Matrix basis = kernel_basis(A);

    Vector solution;
    for (std::size_t attempt = 0;; ++attempt) {
        if (attempt == kKernelResampleLimit) {
            throw SearchExhausted("no kernel vector with distinct entries after " +
                                  std::to_string(kKernelResampleLimit) + " draws");
        }
        Vector coeffs(basis.rows());
        for (auto& x : coeffs) x = static_cast<Elem>(kernel_rng.below(q));
        solution = mul(coeffs, basis);
        if (all_distinct(solution)) break;
    }

    const Permutation pi = Permutation::random(n, perm_rng);
    PkpInstance inst{field, n, m, std::move(A), pi.apply(solution), std::nullopt};
    inst.planted = pi.inverse();
    return inst;
}

ExtendedSystem extend(const PkpInstance& instance) {
    const auto& f = instance.field;
    Matrix ones(f, 1, instance.n);
    for (auto& e : ones.row(0)) e = 1;
    Matrix H = instance.A.stack(ones);
    if (rank(H) != H.rows()) {
        throw InvalidParameters("extended system is rank deficient: all-ones row lies in the row space of A");
    }
    Vector s(H.rows(), 0);
    Elem total = 0;
    for (auto v : instance.c) total = f.add(total, v);
    s.back() = total;
    return ExtendedSystem{std::move(H), std::move(s)};
}

Reconstructor::Reconstructor(PrimeField field, std::vector<std::size_t> J, std::vector<std::size_t> rest,
                             Matrix reduced, Vector rhs)
    : field_(field), J_(std::move(J)), rest_(std::move(rest)), reduced_(std::move(reduced)), rhs_(std::move(rhs)) {}

std::optional<Reconstructor> Reconstructor::create(const ExtendedSystem& system, std::vector<std::size_t> J) {
    const std::size_t n = system.n();
    const std::size_t r = system.r();
    if (J.size() + r != n) throw InvalidParameters("reconstruct: |J| must be n - r");
    std::vector<bool> in_j(n, false);
    for (auto j : J) {
        if (j >= n || in_j[j]) throw InvalidParameters("reconstruct: J has repeated or out-of-range indices");
        in_j[j] = true;
    }
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i)
        if (!in_j[i]) rest.push_back(i);

    // augment with s^T so the same transform lands on the syndrome
    Matrix aug(system.field(), r, n + 1);
    for (std::size_t i = 0; i < r; ++i) {
        std::ranges::copy(system.H.row(i), aug.row(i).begin());
        aug(i, n) = system.s[i];
    }
    auto reduced = rref(aug, rest);
    if (!reduced) return std::nullopt;
    Vector rhs = reduced->column(n);
    Matrix coeffs = reduced->select_columns(J);
    return Reconstructor(system.field(), std::move(J), std::move(rest), std::move(coeffs), std::move(rhs));
}

Vector Reconstructor::complete(std::span<const Elem> partial) const {
    if (partial.size() != J_.size()) throw InvalidParameters("reconstruct: partial length must be |J|");
    Vector full(J_.size() + rest_.size(), 0);
    for (std::size_t j = 0; j < J_.size(); ++j) full[J_[j]] = partial[j];
    for (std::size_t u = 0; u < rest_.size(); ++u) {
        full[rest_[u]] = field_.sub(rhs_[u], field_.dot(partial, reduced_.row(u)));
    }
    return full;
}

std::optional<Vector> reconstruct(const ExtendedSystem& system, std::span<const std::size_t> J,
                                  std::span<const Elem> partial) {
    auto rec = Reconstructor::create(system, std::vector<std::size_t>(J.begin(), J.end()));
    if (!rec) return std::nullopt;
    return rec->complete(partial);
}

std::optional<Permutation> match_arrangement(std::span<const Elem> c, std::span<const Elem> candidate) {
    if (c.size() != candidate.size()) return std::nullopt;
    std::unordered_map<Elem, std::size_t> position;
    position.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) position.emplace(c[i], i);
    std::vector<std::size_t> map(c.size());
    std::vector<bool> used(c.size(), false);
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        auto it = position.find(candidate[i]);
        if (it == position.end() || used[it->second]) return std::nullopt;
        used[it->second] = true;
        map[i] = it->second;
    }
    return Permutation(std::move(map));
}

bool verify(const PkpInstance& instance, const Permutation& candidate) {
    if (candidate.size() != instance.n || instance.c.size() != instance.n || instance.A.cols() != instance.n) {
        throw InvalidParameters("verify: size mismatch");
    }
    const Vector permuted = candidate.apply(instance.c);
    const Vector syndrome = mul_transpose(permuted, instance.A);
    return std::ranges::all_of(syndrome, [](Elem e) { return e == 0; });
}

std::vector<Permutation> brute_force_solve(const PkpInstance& instance, std::size_t max_n) {
    if (instance.n > max_n) {
        throw InvalidParameters("brute force capped at n = " + std::to_string(max_n));
    }
    std::vector<std::size_t> map(instance.n);
    std::iota(map.begin(), map.end(), std::size_t{0});
    std::vector<Permutation> out;
    const auto& f = instance.field;
    Vector permuted(instance.n);
    do {
        for (std::size_t i = 0; i < instance.n; ++i) permuted[i] = instance.c[map[i]];
        bool ok = true;
        for (std::size_t row = 0; row < instance.m && ok; ++row) ok = f.dot(permuted, instance.A.row(row)) == 0;
        if (ok) out.emplace_back(map);
    } while (std::ranges::next_permutation(map).found);
    return out;
}

}  // namespace pkp
