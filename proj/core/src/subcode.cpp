#include "pkp/subcode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "pkp/combinatorics.hpp"
#include "pkp/error.hpp"
#include "pkp/linalg.hpp"

namespace pkp {

double log2_gaussian_binomial(std::uint64_t k, std::uint64_t d, std::uint64_t q) {
    if (d > k) return -std::numeric_limits<double>::infinity();
    const double lq = std::log2(static_cast<double>(q));
    double acc = 0.0;
    for (std::uint64_t i = 0; i < d; ++i) {
        acc += log2_qpow_minus_one(lq, k - i) - log2_qpow_minus_one(lq, i + 1);
    }
    return acc;
}

SubcodeCountBounds count_bounds(std::size_t n, std::size_t k, std::size_t w, std::size_t d, std::uint64_t q) {
    if (d < 1 || d > w || d > k || w > n || k > n) {
        std::ostringstream msg;
        msg << "count_bounds: need 1 <= d <= min(w, k), w <= n, k <= n (n=" << n << " k=" << k << " w=" << w
            << " d=" << d << ")";
        throw InvalidParameters(msg.str());
    }
    const double lq = std::log2(static_cast<double>(q));
    const double ratio = log2_gaussian_binomial(k, d, q) - log2_gaussian_binomial(n, d, q);
    const double choose = log2_binomial(n, w);
    const double per_column = log2_qpow_minus_one(lq, d);  // log2(q^d - 1)

    double basis_changes = 0.0;  // log2 prod_{i<d} (q^d - q^i)
    for (std::size_t i = 0; i < d; ++i) {
        basis_changes += static_cast<double>(i) * lq + log2_qpow_minus_one(lq, d - i);
    }
    const double lower = choose + static_cast<double>(w - d) * per_column + ratio;
    // (q^d - 1)^d / prod (q^d - q^i) is exactly 1 for d = 1
    return SubcodeCountBounds{lower, lower + (static_cast<double>(d) * per_column - basis_changes)};
}

double isd_success_probability(std::size_t n, std::size_t k, std::size_t d, std::size_t w) {
    if (d > w || d > k || k > n || w > n || k - d > n - w) return 0.0;
    return std::exp2(log2_binomial(w, d) + log2_binomial(n - w, k - d) - log2_binomial(n, k));
}

namespace {

/// 1 - (1 - p)^N with N = 2^lower_log2.
double at_least_one_hit(double p, double lower_log2) {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    const double count = std::exp2(lower_log2);
    return -std::expm1(count * std::log1p(-p));
}

}  // namespace

double isd_cost(std::size_t n, std::size_t k, std::size_t w, std::size_t d, std::uint64_t q) {
    const auto bounds = count_bounds(n, k, w, d, q);
    const double success = at_least_one_hit(isd_success_probability(n, k, d, w), bounds.lower_log2);
    if (success <= 0.0) return std::numeric_limits<double>::infinity();
    const double kk = static_cast<double>(k);
    const double work = kk * kk * kk + std::exp2(log2_binomial(k, d));
    return std::log2(work) - std::log2(success);
}

std::size_t default_isd_iterations(std::size_t n, std::size_t k, std::size_t w, std::size_t d, std::uint64_t q) {
    const auto bounds = count_bounds(n, k, w, d, q);
    const double success =
        at_least_one_hit(isd_success_probability(n, k, d, w), std::max(bounds.lower_log2, 0.0));
    if (success <= 0.0) return 0;
    constexpr double kCeiling = 1e15;
    return static_cast<std::size_t>(std::min(std::ceil(10.0 * std::log(2.0) / success), kCeiling));
}

namespace {

/// Column-support bitset for n <= 256.
struct SupportMask {
    std::array<std::uint64_t, 4> words{};

    void set(std::size_t i) { words[i / 64] |= std::uint64_t{1} << (i % 64); }
    SupportMask operator|(const SupportMask& o) const {
        SupportMask r;
        for (std::size_t i = 0; i < words.size(); ++i) r.words[i] = words[i] | o.words[i];
        return r;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }
};

constexpr std::size_t kMaxLength = 256;

/// First d-subset (lexicographic) of the rows whose masks OR to exactly
/// `target` bits; prunes as soon as the running support exceeds it.
bool find_subset(const std::vector<SupportMask>& masks, std::size_t d, std::size_t target, std::size_t start,
                 const SupportMask& acc, std::vector<std::size_t>& chosen) {
    if (chosen.size() == d) return acc.count() == target;
    const std::size_t need = d - chosen.size();
    for (std::size_t i = start; i + need <= masks.size(); ++i) {
        const SupportMask next = acc | masks[i];
        if (next.count() > target) continue;
        chosen.push_back(i);
        if (find_subset(masks, d, target, i + 1, next, chosen)) return true;
        chosen.pop_back();
    }
    return false;
}

}  // namespace

std::optional<Subcode> isd_iteration(const Matrix& G, std::size_t w, std::size_t d, RandomStream& rng) {
    const std::size_t k = G.rows();
    const std::size_t n = G.cols();
    if (d < 1 || d > k) throw InvalidParameters("isd_iteration: need 1 <= d <= k");
    if (w + k > n + d) throw InvalidParameters("isd_iteration: need w <= n + d - k");
    if (n > kMaxLength) throw InvalidParameters("isd_iteration: code length above 256");
    if (w < d) return std::nullopt;

    const Permutation sigma = Permutation::random(n, rng);
    const Matrix permuted = G.permute_columns(sigma);
    std::vector<std::size_t> info(k);
    for (std::size_t i = 0; i < k; ++i) info[i] = i;
    const auto systematic = rref(permuted, info);
    if (!systematic) return std::nullopt;

    std::vector<SupportMask> masks(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = k; j < n; ++j) {
            if ((*systematic)(i, j) != 0) masks[i].set(j);
        }
    }
    std::vector<std::size_t> chosen;
    chosen.reserve(d);
    if (!find_subset(masks, d, w - d, 0, SupportMask{}, chosen)) return std::nullopt;

    // undo sigma: frame column j is original column sigma[j]
    const Matrix rows = systematic->select_rows(chosen);
    Matrix generator(G.field(), d, n);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < n; ++j) generator(i, sigma[j]) = rows(i, j);
    auto support = generator.support();
    return Subcode{std::move(generator), std::move(support)};
}

FindSubcodeResult find_subcode(const Matrix& G, std::size_t w, std::size_t d, RandomStream& rng,
                               const FindSubcodeOptions& options) {
    const std::size_t k = G.rows();
    const std::size_t n = G.cols();
    const std::uint64_t q = G.field().modulus();
    const auto bounds = count_bounds(n, k, w, d, q);
    if (bounds.lower_log2 <= 0.0 && options.warn) {
        std::ostringstream msg;
        msg << "lower subcode count bound 2^" << bounds.lower_log2 << " <= 1 for (n=" << n << ", k=" << k
            << ", w=" << w << ", d=" << d << "): a subcode may not exist";
        options.warn(msg.str());
    }
    std::size_t budget = options.max_iterations;
    if (budget == 0) budget = std::max<std::size_t>(default_isd_iterations(n, k, w, d, q), 1);

    const std::size_t host_rank = rank(G);
    FindSubcodeResult result;
    for (std::size_t it = 0; it < budget; ++it) {
        RandomStream iteration_rng = rng.split(static_cast<std::uint64_t>(it));
        auto candidate = isd_iteration(G, w, d, iteration_rng);
        result.iterations = it + 1;
        if (!candidate) continue;
        if (candidate->support_size() != w || rank(candidate->generator) != d) continue;
        if (rank(G.stack(candidate->generator)) != host_rank) continue;
        result.subcode = std::move(candidate);
        break;
    }
    return result;
}

}  // namespace pkp
