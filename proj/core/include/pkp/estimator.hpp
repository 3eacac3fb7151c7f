#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pkp/baseline.hpp"
#include "pkp/filtered.hpp"

namespace pkp {

enum class SolverKind { Baseline, Filtered };

const char* to_string(SolverKind kind);

/// PKP instance shape (n, m, q); r = m + 1 throughout.
struct ProblemShape {
    std::size_t n;
    std::size_t m;
    std::uint64_t q;

    std::size_t r() const noexcept { return m + 1; }
};

/// Per-term log2 costs. For the baseline only `total` is meaningful and the
/// remaining terms are NaN.
struct CostBreakdown {
    double t_isd;
    double t_k;
    double t_l;
    double t_final;
    double total;
};

/// log2 of the split-list cost with parameters (l1, l2).
double cost_baseline(const ProblemShape& shape, std::size_t l1, std::size_t l2);

/// Throws InvalidParameters on constraint violations, d = 0, or when the
/// lower subcode count bound is <= 1.
CostBreakdown cost_filtered(const ProblemShape& shape, const FilteredParams& params);

struct SweepPoint {
    ProblemShape shape;
    SolverKind kind;
    std::variant<BaselineParams, FilteredParams> params;
    CostBreakdown cost;
};

struct OptimizeOptions {
    /// Upper bound on the subcode dimension; 0 means bounded only by l.
    std::size_t d_max = 0;
};

/// Exhaustive grid search. Ties keep the lexicographically smallest
/// (l, l1) or (d, w, l, w1). nullopt when nothing is feasible.
std::optional<SweepPoint> optimize(const ProblemShape& shape, SolverKind kind, const OptimizeOptions& options = {});

/// One optimized point per (m, kind); nullopt entries mark infeasible grids.
struct SweepRow {
    ProblemShape shape;
    SolverKind kind;
    std::optional<SweepPoint> best;
};

std::vector<SweepRow> sweep(std::size_t n, std::uint64_t q, const std::vector<std::size_t>& ms,
                            const std::vector<SolverKind>& kinds, const OptimizeOptions& options = {},
                            unsigned threads = 1);

/// Header: n,m,q,solver,d,w,w1,w2,l,l1,l2,log2_t_isd,log2_t_k,log2_t_l,log2_t_final,log2_total
extern const char* const kCsvHeader;
std::string csv_row(const SweepRow& row);
std::string csv_row(const SweepPoint& point);

}  // namespace pkp
