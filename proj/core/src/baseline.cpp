#include "pkp/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pkp/combinatorics.hpp"
#include "pkp/error.hpp"
#include "pkp/linalg.hpp"

namespace pkp {

void BaselineParams::validate(std::size_t n, std::size_t r) const {
    std::ostringstream msg;
    if (r >= n) msg << "r = " << r << " must be below n = " << n;
    else if (l < 1 || l > r) msg << "l = " << l << " outside [1, r = " << r << "]";
    else if (l1 < 1 || l2 < 1) msg << "l1 and l2 must be >= 1";
    else if (l1 + l2 != n - r + l) msg << "l1 + l2 = " << l1 + l2 << " must equal n - r + l = " << n - r + l;
    else return;
    throw InvalidParameters("baseline parameters: " + msg.str());
}

namespace {

constexpr std::size_t kFrameRetries = 64;

}  // namespace

std::optional<BaselineFrame> systematic_frame(const ExtendedSystem& system, Permutation columns) {
    const std::size_t n = system.n();
    const std::size_t r = system.r();
    const Matrix permuted = system.H.permute_columns(columns);
    Matrix aug(system.field(), r, n + 1);
    for (std::size_t i = 0; i < r; ++i) {
        std::ranges::copy(permuted.row(i), aug.row(i).begin());
        aug(i, n) = system.s[i];
    }
    std::vector<std::size_t> info(r);
    for (std::size_t i = 0; i < r; ++i) info[i] = n - r + i;
    auto reduced = rref(aug, info);
    if (!reduced) return std::nullopt;
    return BaselineFrame{std::move(columns), reduced->block(0, r, 0, n), reduced->column(n)};
}

BaselineFrame baseline_frame(const ExtendedSystem& system, RandomStream& rng) {
    if (auto frame = systematic_frame(system, Permutation::identity(system.n()))) return std::move(*frame);
    for (std::size_t attempt = 0; attempt < kFrameRetries; ++attempt) {
        if (auto frame = systematic_frame(system, Permutation::random(system.n(), rng))) return std::move(*frame);
    }
    throw SearchExhausted("no column permutation puts H in systematic form");
}

BaselineLists build_baseline_lists(const ExtendedSystem& system, std::span<const Elem> c, const BaselineParams& params,
                                   RandomStream& rng, std::size_t max_list_entries) {
    const std::size_t n = system.n();
    const std::size_t r = system.r();
    params.validate(n, r);
    if (c.size() != n) throw InvalidParameters("c must have length n");
    check_list_cap("L1", log2_arrangements(n, params.l1), max_list_entries);
    check_list_cap("L2", log2_arrangements(n, params.l2), max_list_entries);

    BaselineFrame frame = baseline_frame(system, rng);
    const Matrix top = frame.systematic.block(0, params.l, 0, n - r + params.l);
    const Vector offset(frame.rhs.begin(), frame.rhs.begin() + static_cast<std::ptrdiff_t>(params.l));

    TaggedList first = build_tagged_list(c, top.block(0, params.l, 0, params.l1), {}, false);
    TaggedList second = build_tagged_list(c, top.block(0, params.l, params.l1, params.l2), offset, true);
    return BaselineLists{std::move(frame), std::move(first), std::move(second)};
}

SolveResult solve_baseline(const ExtendedSystem& system, std::span<const Elem> c, const BaselineParams& params,
                           RandomStream& rng, const SolveOptions& options) {
    const std::size_t n = system.n();
    const std::size_t r = system.r();
    const double lq = std::log2(static_cast<double>(system.field().modulus()));

    Stopwatch watch;
    BaselineLists lists = build_baseline_lists(system, c, params, rng, options.max_list_entries);
    if (options.log) {
        const double t = watch.elapsed_ms();
        options.log->record("L1", log2_arrangements(n, params.l1), lists.first.size(), t);
        options.log->record("L2", log2_arrangements(n, params.l2), lists.second.size(), t);
    }

    const double predicted_l = log2_arrangements(n, n - r + params.l) - static_cast<double>(params.l) * lq;
    check_list_cap("L", predicted_l, options.max_list_entries);
    watch = Stopwatch{};
    const TaggedList candidates = merge(lists.first, lists.second, MergeOptions{options.max_list_entries});
    if (options.log) options.log->record("L", predicted_l, candidates.size(), watch.elapsed_ms());

    // In the frame the last r columns are the identity block, so J = the first n - r positions.
    watch = Stopwatch{};
    const auto& f = system.field();
    const Matrix& sys = lists.frame.systematic;
    const Permutation back = lists.frame.columns.inverse();
    SolveResult result;
    Vector frame_vec(n);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        ++result.candidates;
        const auto x = candidates.partial(i);
        std::ranges::copy(x.first(n - r), frame_vec.begin());
        const auto head = x.first(n - r);
        for (std::size_t u = 0; u < r; ++u) {
            frame_vec[n - r + u] = f.sub(lists.frame.rhs[u], f.dot(head, sys.row(u).first(n - r)));
        }
        const Vector original = back.apply(frame_vec);
        auto pi = match_arrangement(c, original);
        if (!pi) continue;
        result.solutions.push_back(std::move(*pi));
        if (!options.exhaustive) break;
    }
    std::ranges::sort(result.solutions);
    if (options.log) {
        options.log->record("solutions", log2_arrangements(n, n) - static_cast<double>(r - 1) * lq,
                            result.solutions.size(), watch.elapsed_ms());
    }
    return result;
}

}  // namespace pkp
