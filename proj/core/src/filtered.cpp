#include "pkp/filtered.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pkp/combinatorics.hpp"
#include "pkp/error.hpp"
#include "pkp/linalg.hpp"

namespace pkp {

void FilteredParams::validate(std::size_t n, std::size_t r) const {
    std::ostringstream msg;
    if (r >= n) msg << "r = " << r << " must be below n = " << n;
    else if (d < 1) msg << "d must be >= 1";
    else if (w1 < 1 || w2 < 1) msg << "w1 and w2 must be >= 1";
    else if (w != w1 + w2) msg << "w = " << w << " must equal w1 + w2 = " << w1 + w2;
    else if (w > n) msg << "w = " << w << " exceeds n = " << n;
    else if (d > r) msg << "d = " << d << " exceeds r = " << r;
    else if (l > n - r) msg << "l = " << l << " exceeds n - r = " << n - r;
    else if (l > r) msg << "l = " << l << " exceeds r = " << r;
    else if (d > l) msg << "d = " << d << " exceeds l = " << l;
    else if (w > n - r + l) msg << "w = " << w << " exceeds n - r + l = " << n - r + l;
    else if (w + r > n + d) msg << "w = " << w << " exceeds n + d - r = " << n + d - r << " (ISD feasibility)";
    else return;
    throw InvalidParameters("filtered parameters: " + msg.str());
}

namespace {

constexpr std::size_t kAlignRetries = 64;
constexpr std::size_t kReshuffleSupportAfter = 16;

}  // namespace

AlignedSystem align(const ExtendedSystem& system, const Subcode& subcode, const FilteredParams& params,
                    RandomStream& rng) {
    const std::size_t n = system.n();
    const std::size_t r = system.r();
    params.validate(n, r);
    const std::size_t p = n - r + params.l;
    if (subcode.dimension() != params.d || subcode.generator.cols() != n) {
        throw InvalidParameters("align: subcode dimension does not match d");
    }
    if (subcode.support_size() != params.w) throw InvalidParameters("align: subcode support size does not match w");

    auto S = solve_row_combination(subcode.generator, system.H);
    if (!S) throw InvalidParameters("align: subcode rows are not in the row space of H");
    Vector subcode_rhs = mul_transpose(system.s, *S);

    std::vector<std::size_t> support = subcode.support;
    std::ranges::sort(support);
    std::vector<std::size_t> others;
    for (std::size_t j = 0, k = 0; j < n; ++j) {
        if (k < support.size() && support[k] == j) ++k;
        else others.push_back(j);
    }

    const std::size_t head = p - params.w;
    for (std::size_t attempt = 0; attempt < kAlignRetries; ++attempt) {
        if (attempt > 0) {
            std::vector<std::size_t> shuffled = others;
            const Permutation mix = Permutation::random(shuffled.size(), rng);
            others = mix.apply<std::size_t>(shuffled);
        }
        if (attempt >= kReshuffleSupportAfter) {
            const Permutation mix = Permutation::random(support.size(), rng);
            support = mix.apply<std::size_t>(support);
        }
        std::vector<std::size_t> mapping;
        mapping.reserve(n);
        mapping.insert(mapping.end(), others.begin(), others.begin() + static_cast<std::ptrdiff_t>(head));
        mapping.insert(mapping.end(), support.begin(), support.end());
        mapping.insert(mapping.end(), others.begin() + static_cast<std::ptrdiff_t>(head), others.end());
        Permutation sigma(std::move(mapping));

        auto frame = systematic_frame(system, sigma);
        if (!frame) continue;
        Matrix Z = subcode.generator.permute_columns(sigma);
        const Matrix block = frame->systematic.block(params.d, params.l - params.d, 0, n);
        if (rank(Z.stack(block)) != params.l) continue;

        AlignedSystem out{
            std::move(sigma),
            std::move(Z),
            std::move(subcode_rhs),
            frame->systematic,
            frame->rhs,
            frame->systematic.block(params.d, params.l - params.d, 0, p),
            Vector(frame->rhs.begin() + static_cast<std::ptrdiff_t>(params.d),
                   frame->rhs.begin() + static_cast<std::ptrdiff_t>(params.l)),
        };
        return out;
    }
    throw SearchExhausted("align: no column arrangement gives a systematic form with joint rank l");
}

TaggedList k_stage(const AlignedSystem& aligned, std::span<const Elem> c, const FilteredParams& params,
                   const SolveOptions& options) {
    const std::size_t n = aligned.Z.cols();
    const std::size_t start = aligned.prefix() - params.w;
    const double lq = std::log2(static_cast<double>(aligned.Z.field().modulus()));
    check_list_cap("K1", log2_arrangements(n, params.w1), options.max_list_entries);
    check_list_cap("K2", log2_arrangements(n, params.w2), options.max_list_entries);
    const double predicted_k = log2_arrangements(n, params.w) - static_cast<double>(params.d) * lq;
    check_list_cap("K", predicted_k, options.max_list_entries);

    Stopwatch watch;
    const TaggedList k1 = build_tagged_list(c, aligned.Z.block(0, params.d, start, params.w1), {}, false);
    if (options.log) options.log->record("K1", log2_arrangements(n, params.w1), k1.size(), watch.elapsed_ms());
    watch = Stopwatch{};
    const TaggedList k2 =
        build_tagged_list(c, aligned.Z.block(0, params.d, start + params.w1, params.w2), aligned.subcode_rhs, true);
    if (options.log) options.log->record("K2", log2_arrangements(n, params.w2), k2.size(), watch.elapsed_ms());
    watch = Stopwatch{};
    TaggedList k = merge(k1, k2, MergeOptions{options.max_list_entries});
    if (options.log) options.log->record("K", predicted_k, k.size(), watch.elapsed_ms());
    return k;
}

SolveResult solve_filtered(const ExtendedSystem& system, std::span<const Elem> c, const FilteredParams& params,
                           RandomStream& rng, const SolveOptions& options, const FindSubcodeOptions& isd_options) {
    const std::size_t n = system.n();
    const std::size_t r = system.r();
    params.validate(n, r);
    if (c.size() != n) throw InvalidParameters("c must have length n");
    const std::uint64_t q = system.field().modulus();
    const double lq = std::log2(static_cast<double>(q));
    const std::size_t p = n - r + params.l;
    const std::size_t head = p - params.w;

    Stopwatch watch;
    RandomStream isd_rng = rng.split("isd");
    const auto found = find_subcode(system.H, params.w, params.d, isd_rng, isd_options);
    if (options.log) {
        const double kk = static_cast<double>(r);
        const double per_iteration = std::log2(kk * kk * kk + std::exp2(log2_binomial(r, params.d)));
        options.log->record("ISD", isd_cost(n, r, params.w, params.d, q) - per_iteration, found.iterations,
                            watch.elapsed_ms());
    }
    if (!found.subcode) {
        throw SearchExhausted("ISD found no (d=" + std::to_string(params.d) + ", w=" + std::to_string(params.w) +
                              ") subcode in " + std::to_string(found.iterations) + " iterations");
    }

    RandomStream align_rng = rng.split("align");
    const AlignedSystem aligned = align(system, *found.subcode, params, align_rng);
    const TaggedList k = k_stage(aligned, c, params, options);

    const double predicted_l1 = log2_arrangements(n, head);
    check_list_cap("L1", predicted_l1, options.max_list_entries);
    watch = Stopwatch{};
    const std::size_t rows = params.l - params.d;
    const TaggedList l1 = build_tagged_list(c, aligned.block.block(0, rows, 0, head), {}, false);
    if (options.log) options.log->record("L1", predicted_l1, l1.size(), watch.elapsed_ms());
    watch = Stopwatch{};
    const TaggedList l2 = k.retag(aligned.block.block(0, rows, head, params.w), aligned.block_rhs, true);
    if (options.log) {
        options.log->record("L2", log2_arrangements(n, params.w) - static_cast<double>(params.d) * lq, l2.size(),
                            watch.elapsed_ms());
    }

    const double predicted_l = log2_arrangements(n, p) - static_cast<double>(params.l) * lq;
    check_list_cap("L", predicted_l, options.max_list_entries);
    watch = Stopwatch{};
    const TaggedList candidates = merge(l1, l2, MergeOptions{options.max_list_entries});
    if (options.log) options.log->record("L", predicted_l, candidates.size(), watch.elapsed_ms());

    watch = Stopwatch{};
    const auto& f = system.field();
    const Permutation back = aligned.sigma.inverse();
    SolveResult result;
    Vector frame_vec(n);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        ++result.candidates;
        const auto x = candidates.partial(i);
        const auto known = x.first(n - r);
        std::ranges::copy(known, frame_vec.begin());
        for (std::size_t u = 0; u < r; ++u) {
            frame_vec[n - r + u] =
                f.sub(aligned.systematic_rhs[u], f.dot(known, aligned.systematic.row(u).first(n - r)));
        }
        auto pi = match_arrangement(c, back.apply(frame_vec));
        if (!pi) continue;
        result.solutions.push_back(std::move(*pi));
        if (!options.exhaustive) break;
    }
    std::ranges::sort(result.solutions);
    if (options.log) {
        options.log->record("solutions", log2_factorial(n) - static_cast<double>(r - 1) * lq,
                            result.solutions.size(), watch.elapsed_ms());
    }
    return result;
}

}  // namespace pkp
