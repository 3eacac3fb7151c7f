#pragma once

#include <cstddef>
#include <span>

#include "pkp/baseline.hpp"
#include "pkp/instance.hpp"
#include "pkp/subcode.hpp"
#include "pkp/tagged_list.hpp"

namespace pkp {

/// Parameters of the subcode-filtered solver.
struct FilteredParams {
    std::size_t d;   ///< subcode dimension
    std::size_t w;   ///< subcode support size, w = w1 + w2
    std::size_t w1;
    std::size_t w2;
    std::size_t l;   ///< equations used in the final merge

    /// Throws InvalidParameters naming the violated constraint.
    void validate(std::size_t n, std::size_t r) const;
};

/// Everything the list stages need, in the permuted column frame. The
/// subcode support sits on [p - w, p) with p = n - r + l.
struct AlignedSystem {
    Permutation sigma;    ///< frame column j is original column sigma[j]
    Matrix Z;             ///< sigma(S H), d x n
    Vector subcode_rhs;   ///< s S^T
    Matrix systematic;    ///< M sigma(H) = (U, I_r)
    Vector systematic_rhs;///< s M^T
    Matrix block;         ///< rows [d, l), columns [0, p) of the systematic form
    Vector block_rhs;     ///< matching coordinates of s M^T

    std::size_t prefix() const noexcept { return block.cols(); }
};

/// Throws SearchExhausted when no column arrangement yields a usable frame.
AlignedSystem align(const ExtendedSystem& system, const Subcode& subcode, const FilteredParams& params,
                    RandomStream& rng);

/// K = K1 join K2 over the support block: every y in S_w(c) with y Z_block^T = s S^T.
TaggedList k_stage(const AlignedSystem& aligned, std::span<const Elem> c, const FilteredParams& params,
                   const SolveOptions& options = {});

/// ISD for a (d, w) subcode of the row space of H, alignment, K stage, L
/// stage, final completion. Throws SearchExhausted when ISD gives up.
SolveResult solve_filtered(const ExtendedSystem& system, std::span<const Elem> c, const FilteredParams& params,
                           RandomStream& rng, const SolveOptions& options = {},
                           const FindSubcodeOptions& isd_options = {});

}  // namespace pkp
