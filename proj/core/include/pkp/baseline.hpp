#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pkp/instance.hpp"
#include "pkp/stage_log.hpp"
#include "pkp/tagged_list.hpp"

namespace pkp {

/// Split-list parameters: l1 + l2 = n - r + l, 1 <= l <= r.
struct BaselineParams {
    std::size_t l;
    std::size_t l1;
    std::size_t l2;

    /// Throws InvalidParameters naming the violated constraint.
    void validate(std::size_t n, std::size_t r) const;
};

/// Options shared by both solvers.
struct SolveOptions {
    /// Keep going after the first survivor and return every solution.
    bool exhaustive = false;
    std::size_t max_list_entries = std::size_t{1} << 28;
    StageLog* log = nullptr;
};

struct SolveResult {
    /// Permutations pi with pi(c) A^T = 0; one entry unless exhaustive.
    std::vector<Permutation> solutions;
    std::size_t candidates = 0;
};

/// Column frame used by the baseline: H permuted so its last r columns are
/// an information set, in systematic form.
struct BaselineFrame {
    Permutation columns;  ///< frame column j is original column columns[j]
    Matrix systematic;    ///< RREF(columns(H), last r columns)
    Vector rhs;           ///< s * M^T for the same transform
};

struct BaselineLists {
    BaselineFrame frame;
    TaggedList first;
    TaggedList second;
};

/// Systematic form of columns(H) on its last r columns; nullopt when that block is singular.
std::optional<BaselineFrame> systematic_frame(const ExtendedSystem& system, Permutation columns);

/// Systematic form on the last r columns, resampling a column permutation
/// when that block is singular. Throws SearchExhausted past the retry budget.
BaselineFrame baseline_frame(const ExtendedSystem& system, RandomStream& rng);

/// L1 over S_{l1}(c) tagged x * H1^T, L2 over S_{l2}(c) tagged s~ - y * H2^T.
BaselineLists build_baseline_lists(const ExtendedSystem& system, std::span<const Elem> c, const BaselineParams& params,
                                   RandomStream& rng, std::size_t max_list_entries = std::size_t{1} << 28);

/// Merge, then complete each candidate through the systematic relations and
/// keep those that rearrange c.
SolveResult solve_baseline(const ExtendedSystem& system, std::span<const Elem> c, const BaselineParams& params,
                           RandomStream& rng, const SolveOptions& options = {});

}  // namespace pkp
