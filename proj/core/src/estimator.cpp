#include "pkp/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "pkp/combinatorics.hpp"
#include "pkp/error.hpp"
#include "pkp/subcode.hpp"

namespace pkp {

const char* to_string(SolverKind kind) {
    return kind == SolverKind::Baseline ? "baseline" : "filtered";
}

const char* const kCsvHeader =
    "n,m,q,solver,d,w,w1,w2,l,l1,l2,log2_t_isd,log2_t_k,log2_t_l,log2_t_final,log2_total";

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

class LogFactorials {
public:
    explicit LogFactorials(std::size_t n) : table_(n + 1) {
        for (std::size_t i = 0; i <= n; ++i) table_[i] = log2_factorial(i);
    }
    double operator()(std::size_t i) const { return table_[i]; }

private:
    std::vector<double> table_;
};

void check_shape(const ProblemShape& shape) {
    if (shape.m < 1 || shape.r() >= shape.n) throw InvalidParameters("shape needs 1 <= m and m + 1 < n");
    if (shape.q < 2) throw InvalidParameters("q must be >= 2");
}

double baseline_total(const LogFactorials& lf, std::size_t n, std::size_t r, double lq, std::size_t l1,
                      std::size_t l2) {
    const double survivors = 2.0 * lf(n) - lf(n - l1) - lf(n - l2) +
                             (static_cast<double>(n) - static_cast<double>(r + l1 + l2)) * lq;
    return log2_sum({lf(n) - lf(n - l1), lf(n) - lf(n - l2), survivors});
}

double k_term(const LogFactorials& lf, std::size_t n, double lq, const FilteredParams& p) {
    return log2_sum({lf(n) - lf(n - p.w1), lf(n) - lf(n - p.w2),
                     2.0 * lf(n) - static_cast<double>(p.d) * lq - lf(n - p.w1) - lf(n - p.w2)});
}

double l_term(const LogFactorials& lf, std::size_t n, std::size_t r, double lq, const FilteredParams& p) {
    const std::size_t head = n - r + p.l - p.w;
    return log2_sum({lf(n) - lf(n - head), lf(n) - static_cast<double>(p.d) * lq - lf(n - p.w),
                     2.0 * lf(n) - static_cast<double>(p.l) * lq - lf(n - p.w) - lf(n - head)});
}

double final_term(const LogFactorials& lf, std::size_t n, std::size_t r, double lq, std::size_t l) {
    return lf(n) - static_cast<double>(l) * lq - lf(r - l);
}

void append_value(std::string& out, double v) {
    out += ',';
    if (std::isnan(v)) return;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    out += buf;
}

void append_count(std::string& out, std::optional<std::size_t> v) {
    out += ',';
    if (v) out += std::to_string(*v);
}

}  // namespace

double cost_baseline(const ProblemShape& shape, std::size_t l1, std::size_t l2) {
    check_shape(shape);
    const std::size_t n = shape.n;
    const std::size_t r = shape.r();
    if (l1 < 1 || l2 < 1 || l1 + l2 > n) throw InvalidParameters("baseline needs l1, l2 >= 1 and l1 + l2 <= n");
    const LogFactorials lf(n);
    return baseline_total(lf, n, r, std::log2(static_cast<double>(shape.q)), l1, l2);
}

CostBreakdown cost_filtered(const ProblemShape& shape, const FilteredParams& params) {
    check_shape(shape);
    const std::size_t n = shape.n;
    const std::size_t r = shape.r();
    params.validate(n, r);
    const auto bounds = count_bounds(n, r, params.w, params.d, shape.q);
    if (!(bounds.lower_log2 > 0.0)) {
        throw InvalidParameters("filtered parameters: expected subcode count lower bound is <= 1 (log2 = " +
                                std::to_string(bounds.lower_log2) + ")");
    }
    const LogFactorials lf(n);
    const double lq = std::log2(static_cast<double>(shape.q));
    CostBreakdown out{};
    out.t_isd = isd_cost(n, r, params.w, params.d, shape.q);
    out.t_k = k_term(lf, n, lq, params);
    out.t_l = l_term(lf, n, r, lq, params);
    out.t_final = final_term(lf, n, r, lq, params.l);
    out.total = log2_sum({out.t_isd, out.t_k, out.t_l, out.t_final});
    return out;
}

std::optional<SweepPoint> optimize(const ProblemShape& shape, SolverKind kind, const OptimizeOptions& options) {
    if (shape.m >= 1 && shape.r() >= shape.n && shape.q >= 2) return std::nullopt;
    check_shape(shape);
    const std::size_t n = shape.n;
    const std::size_t r = shape.r();
    const double lq = std::log2(static_cast<double>(shape.q));
    const LogFactorials lf(n);
    std::optional<SweepPoint> best;

    if (kind == SolverKind::Baseline) {
        for (std::size_t l = 1; l <= r; ++l) {
            const std::size_t span = n - r + l;
            for (std::size_t l1 = 1; l1 < span; ++l1) {
                const std::size_t l2 = span - l1;
                const double total = baseline_total(lf, n, r, lq, l1, l2);
                if (!best || total < best->cost.total) {
                    best = SweepPoint{shape, kind, BaselineParams{l, l1, l2}, CostBreakdown{kNaN, kNaN, kNaN, kNaN, total}};
                }
            }
        }
        return best;
    }

    const std::size_t l_max = std::min(n - r, r);
    const std::size_t d_cap = options.d_max == 0 ? l_max : std::min(options.d_max, l_max);
    for (std::size_t d = 1; d <= d_cap; ++d) {
        for (std::size_t w = std::max<std::size_t>(2, d); w + r <= n + d && w <= n; ++w) {
            const auto bounds = count_bounds(n, r, w, d, shape.q);
            if (!(bounds.lower_log2 > 0.0)) continue;
            const double t_isd = isd_cost(n, r, w, d, shape.q);
            if (!std::isfinite(t_isd)) continue;
            for (std::size_t l = d; l <= l_max; ++l) {
                if (w > n - r + l) continue;
                const double t_final = final_term(lf, n, r, lq, l);
                for (std::size_t w1 = 1; w1 < w; ++w1) {
                    const FilteredParams p{d, w, w1, w - w1, l};
                    const double t_k = k_term(lf, n, lq, p);
                    const double t_l = l_term(lf, n, r, lq, p);
                    const double total = log2_sum({t_isd, t_k, t_l, t_final});
                    if (!best || total < best->cost.total) {
                        best = SweepPoint{shape, kind, p, CostBreakdown{t_isd, t_k, t_l, t_final, total}};
                    }
                }
            }
        }
    }
    return best;
}

std::vector<SweepRow> sweep(std::size_t n, std::uint64_t q, const std::vector<std::size_t>& ms,
                            const std::vector<SolverKind>& kinds, const OptimizeOptions& options, unsigned threads) {
    std::vector<SweepRow> rows;
    for (std::size_t m : ms) {
        for (SolverKind kind : kinds) rows.push_back(SweepRow{ProblemShape{n, m, q}, kind, std::nullopt});
    }

    for (const auto& row : rows) {
        if (row.shape.m < 1 || row.shape.m >= n || q < 2) {
            throw InvalidParameters("sweep needs 1 <= m < n and q >= 2");
        }
    }

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
            rows[i].best = optimize(rows[i].shape, rows[i].kind, options);
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows.size())));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return rows;
}

std::string csv_row(const SweepPoint& point) {
    std::string out = std::to_string(point.shape.n) + ',' + std::to_string(point.shape.m) + ',' +
                      std::to_string(point.shape.q) + ',' + to_string(point.kind);
    if (const auto* f = std::get_if<FilteredParams>(&point.params)) {
        append_count(out, f->d);
        append_count(out, f->w);
        append_count(out, f->w1);
        append_count(out, f->w2);
        append_count(out, f->l);
        append_count(out, std::nullopt);
        append_count(out, std::nullopt);
    } else {
        const auto& b = std::get<BaselineParams>(point.params);
        for (int i = 0; i < 4; ++i) append_count(out, std::nullopt);
        append_count(out, b.l);
        append_count(out, b.l1);
        append_count(out, b.l2);
    }
    append_value(out, point.cost.t_isd);
    append_value(out, point.cost.t_k);
    append_value(out, point.cost.t_l);
    append_value(out, point.cost.t_final);
    append_value(out, point.cost.total);
    return out;
}

std::string csv_row(const SweepRow& row) {
    if (row.best) return csv_row(*row.best);
    std::string out = std::to_string(row.shape.n) + ',' + std::to_string(row.shape.m) + ',' +
                      std::to_string(row.shape.q) + ',' + to_string(row.kind);
    for (int i = 0; i < 12; ++i) out += ',';
    return out;
}

}  // namespace pkp
