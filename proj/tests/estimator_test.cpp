#include <gtest/gtest.h>

#include <sstream>

#include "big_oracle.hpp"
#include "pkp/estimator.hpp"
#include "pkp/subcode.hpp"
#include "support.hpp"

namespace pkp {
namespace {

using testing::big_factorial;
using testing::big_pow;
using testing::BigInt;
using testing::log2_big;

/// log2 of sum_i terms_i where term_i = num_i * q^{e_i} / den_i, all exact.
struct ExactTerm {
    BigInt num;
    BigInt den;
    long exponent;
};

double exact_log2_sum(const std::vector<ExactTerm>& terms, std::uint64_t q) {
    long lowest = 0;
    for (const auto& t : terms) lowest = std::min(lowest, t.exponent);
    BigInt common = 1;
    for (const auto& t : terms) common *= t.den;
    BigInt numerator = 0;
    for (const auto& t : terms) {
        numerator += t.num * (common / t.den) * big_pow(q, static_cast<std::uint64_t>(t.exponent - lowest));
    }
    return log2_big(numerator) - log2_big(common * big_pow(q, static_cast<std::uint64_t>(-lowest)));
}

BigInt arrangements(std::uint64_t n, std::uint64_t l) { return big_factorial(n) / big_factorial(n - l); }

double exact_baseline(std::size_t n, std::size_t r, std::uint64_t q, std::size_t l1, std::size_t l2) {
    return exact_log2_sum({{arrangements(n, l1), 1, 0},
                           {arrangements(n, l2), 1, 0},
                           {arrangements(n, l1) * arrangements(n, l2), 1,
                            static_cast<long>(n) - static_cast<long>(r + l1 + l2)}},
                          q);
}

void expect_relative(double got, double exact, double tolerance) {
    EXPECT_LE(std::abs(got - exact), tolerance * std::max(1.0, std::abs(exact))) << got << " vs " << exact;
}

TEST(CostBaseline, SmallExample) {
    EXPECT_NEAR(cost_baseline(ProblemShape{6, 2, 7}, 2, 2), std::log2(30.0 + 30.0 + 720.0 * 720.0 / 7.0 / 576.0),
                1e-12);
    EXPECT_NEAR(cost_baseline(ProblemShape{6, 2, 7}, 2, 2), 7.558967, 1e-6);
}

TEST(CostBaseline, MatchesExactArithmetic) {
    RandomStream rng(1);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 6 + rng.below(25);
        const std::size_t m = 1 + rng.below(n - 2);
        const std::size_t r = m + 1;
        const std::size_t l = 1 + rng.below(r);
        const std::size_t span = n - r + l;
        if (span < 2) continue;
        const std::size_t l1 = 1 + rng.below(span - 1);
        const std::uint64_t q = std::vector<std::uint64_t>{2, 3, 251, 509}[rng.below(4)];
        expect_relative(cost_baseline(ProblemShape{n, m, q}, l1, span - l1), exact_baseline(n, r, q, l1, span - l1),
                        1e-6);
    }
}

TEST(CostFiltered, TermsMatchExactArithmetic) {
    RandomStream rng(2);
    int checked = 0;
    for (int trial = 0; trial < 3000 && checked < 200; ++trial) {
        const std::size_t n = 8 + rng.below(23);
        const std::size_t m = 1 + rng.below(n - 2);
        const ProblemShape shape{n, m, 251};
        const std::size_t r = m + 1;
        const std::size_t l_max = std::min(n - r, r);
        if (l_max < 1) continue;
        const std::size_t l = 1 + rng.below(l_max);
        const std::size_t d = 1 + rng.below(l);
        const std::size_t w = 2 + rng.below(n - 1);
        const std::size_t w1 = 1 + rng.below(w - 1);
        const FilteredParams p{d, w, w1, w - w1, l};
        CostBreakdown cost;
        try {
            cost = cost_filtered(shape, p);
        } catch (const InvalidParameters&) {
            continue;
        }
        ++checked;
        const std::size_t head = n - r + l - w;
        const BigInt nf = big_factorial(n);
        expect_relative(cost.t_k,
                        exact_log2_sum({{arrangements(n, p.w1), 1, 0},
                                        {arrangements(n, p.w2), 1, 0},
                                        {arrangements(n, p.w1) * arrangements(n, p.w2), 1, -static_cast<long>(d)}},
                                       251),
                        1e-6);
        expect_relative(cost.t_l,
                        exact_log2_sum({{arrangements(n, head), 1, 0},
                                        {arrangements(n, w), 1, -static_cast<long>(d)},
                                        {arrangements(n, w) * arrangements(n, head), 1, -static_cast<long>(l)}},
                                       251),
                        1e-6);
        expect_relative(cost.t_final, exact_log2_sum({{nf, big_factorial(r - l), -static_cast<long>(l)}}, 251), 1e-6);
    }
    EXPECT_GE(checked, 100);
}

TEST(CostFiltered, TableOneRows) {
    const auto first = cost_filtered(ProblemShape{69, 41, 251}, FilteredParams{1, 22, 2, 20, 16});
    EXPECT_NEAR(first.total, 125.47, 0.5);
    EXPECT_NEAR(first.total, 125.465, 0.001);
    EXPECT_LT(first.t_isd, first.total - 20);
    const auto second = cost_filtered(ProblemShape{94, 54, 509}, FilteredParams{1, 31, 2, 29, 22});
    EXPECT_NEAR(second.total, 189.77, 0.5);
    EXPECT_LT(second.t_isd, second.total - 20);
}

TEST(CostFiltered, TotalBracketsTheLargestTerm) {
    const auto c = cost_filtered(ProblemShape{69, 41, 251}, FilteredParams{1, 22, 2, 20, 16});
    const double top = std::max({c.t_isd, c.t_k, c.t_l, c.t_final});
    EXPECT_GE(c.total, top);
    EXPECT_LE(c.total, top + 2.0);
}

TEST(CostFiltered, SplitSymmetryOfKTerm) {
    const ProblemShape shape{69, 41, 251};
    for (std::size_t w1 = 1; w1 < 22; ++w1) {
        const auto a = cost_filtered(shape, FilteredParams{1, 22, w1, 22 - w1, 16});
        const auto b = cost_filtered(shape, FilteredParams{1, 22, 22 - w1, w1, 16});
        EXPECT_NEAR(a.t_k, b.t_k, 1e-9);
    }
}

TEST(CostFiltered, RejectsDegenerateAndUnbackedParameters) {
    const ProblemShape shape{69, 41, 251};
    EXPECT_THROW((void)cost_filtered(shape, FilteredParams{0, 22, 2, 20, 16}), InvalidParameters);
    ASSERT_LE(count_bounds(69, 42, 10, 1, 251).lower_log2, 0.0);
    EXPECT_THROW((void)cost_filtered(shape, FilteredParams{1, 10, 5, 5, 16}), InvalidParameters);
    EXPECT_THROW((void)cost_filtered(shape, FilteredParams{1, 22, 2, 20, 28}), InvalidParameters);
}

TEST(Optimize, TableOnePointIsInTheGrid) {
    const auto best = optimize(ProblemShape{69, 41, 251}, SolverKind::Filtered);
    ASSERT_TRUE(best);
    EXPECT_LE(best->cost.total, 125.47 + 0.01);
}

TEST(Optimize, SpotCheckAtFiftyTwentySeven) {
    const auto base = optimize(ProblemShape{50, 27, 251}, SolverKind::Baseline);
    const auto filt = optimize(ProblemShape{50, 27, 251}, SolverKind::Filtered);
    ASSERT_TRUE(base && filt);
    EXPECT_NEAR(base->cost.total, 92.03, 1.5);
    EXPECT_NEAR(filt->cost.total, 90.59, 1.5);
}

TEST(Optimize, DimensionCapIsHonoured) {
    const auto capped = optimize(ProblemShape{75, 60, 251}, SolverKind::Filtered, OptimizeOptions{2});
    const auto open = optimize(ProblemShape{75, 60, 251}, SolverKind::Filtered);
    ASSERT_TRUE(capped && open);
    EXPECT_LE(std::get<FilteredParams>(capped->params).d, 2u);
    EXPECT_LE(open->cost.total, capped->cost.total);
}

TEST(Optimize, ReturnsTheGridMinimum) {
    const ProblemShape shape{20, 9, 251};
    const auto best = optimize(shape, SolverKind::Baseline);
    ASSERT_TRUE(best);
    for (std::size_t l = 1; l <= 10; ++l) {
        for (std::size_t l1 = 1; l1 < 10 + l; ++l1) EXPECT_LE(best->cost.total, cost_baseline(shape, l1, 10 + l - l1));
    }
    const auto filt = optimize(shape, SolverKind::Filtered);
    ASSERT_TRUE(filt);
    const auto p = std::get<FilteredParams>(filt->params);
    EXPECT_DOUBLE_EQ(cost_filtered(shape, p).total, filt->cost.total);
}

TEST(Optimize, Reproducible) {
    const auto a = optimize(ProblemShape{50, 30, 251}, SolverKind::Filtered);
    const auto b = optimize(ProblemShape{50, 30, 251}, SolverKind::Filtered);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(csv_row(*a), csv_row(*b));
    EXPECT_EQ(a->cost.total, b->cost.total);
}

TEST(Optimize, NearSquareShapeIsInfeasible) {
    EXPECT_FALSE(optimize(ProblemShape{20, 19, 251}, SolverKind::Filtered));
    EXPECT_FALSE(optimize(ProblemShape{20, 19, 251}, SolverKind::Baseline));
}

TEST(Sweep, FilteredNoWorseForHalfToNineTenthsRatio) {
    std::vector<std::size_t> ms;
    for (std::size_t m = 25; m <= 45; ++m) ms.push_back(m);
    const auto rows = sweep(50, 251, ms, {SolverKind::Baseline, SolverKind::Filtered}, {}, 2);
    ASSERT_EQ(rows.size(), 2 * ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) {
        ASSERT_TRUE(rows[2 * i].best && rows[2 * i + 1].best);
        EXPECT_EQ(rows[2 * i].kind, SolverKind::Baseline);
        EXPECT_LE(rows[2 * i + 1].best->cost.total, rows[2 * i].best->cost.total + 0.01) << "m = " << ms[i];
    }
}

TEST(Sweep, ThreadCountDoesNotChangeOutput) {
    const std::vector<std::size_t> ms{20, 25, 30, 35};
    const auto one = sweep(40, 251, ms, {SolverKind::Baseline, SolverKind::Filtered}, {}, 1);
    const auto four = sweep(40, 251, ms, {SolverKind::Baseline, SolverKind::Filtered}, {}, 4);
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(csv_row(one[i]), csv_row(four[i]));
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

TEST(Csv, HeaderAndEmptyColumns) {
    EXPECT_STREQ(kCsvHeader,
                 "n,m,q,solver,d,w,w1,w2,l,l1,l2,log2_t_isd,log2_t_k,log2_t_l,log2_t_final,log2_total");
    const auto base = optimize(ProblemShape{50, 27, 251}, SolverKind::Baseline);
    const auto cols = split_csv(csv_row(*base));
    ASSERT_EQ(cols.size(), 16u);
    for (std::size_t i : {4u, 5u, 6u, 7u, 11u, 12u, 13u, 14u}) EXPECT_TRUE(cols[i].empty()) << i;
    EXPECT_EQ(cols[15], "92.0295");
    const SweepRow empty{ProblemShape{20, 19, 251}, SolverKind::Filtered, std::nullopt};
    EXPECT_EQ(csv_row(empty), "20,19,251,filtered,,,,,,,,,,,,");
}

TEST(Csv, RowsReEvaluateFromPrintedParameters) {
    const std::vector<std::size_t> ms{27, 33, 40};
    for (const auto& row : sweep(50, 251, ms, {SolverKind::Baseline, SolverKind::Filtered})) {
        const auto cols = split_csv(csv_row(row));
        ASSERT_EQ(cols.size(), 16u);
        const ProblemShape shape{std::stoul(cols[0]), std::stoul(cols[1]), std::stoul(cols[2])};
        double total;
        if (cols[3] == "baseline") {
            total = cost_baseline(shape, std::stoul(cols[9]), std::stoul(cols[10]));
        } else {
            total = cost_filtered(shape, FilteredParams{std::stoul(cols[4]), std::stoul(cols[5]), std::stoul(cols[6]),
                                                        std::stoul(cols[7]), std::stoul(cols[8])})
                        .total;
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", total);
        EXPECT_EQ(cols[15], buf);
    }
}

}  // namespace
}  // namespace pkp
