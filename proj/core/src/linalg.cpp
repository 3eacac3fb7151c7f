#include "pkp/linalg.hpp"

#include "pkp/error.hpp"
#include "pkp/rng.hpp"

namespace pkp {

std::optional<Matrix> rref(const Matrix& mat, std::span<const std::size_t> cols) {
    if (cols.size() != mat.rows()) throw InvalidParameters("rref: |J| must equal the row count");
    for (auto j : cols) {
        if (j >= mat.cols()) throw InvalidParameters("rref: column index out of range");
    }
    const auto& f = mat.field();
    Matrix out = mat;
    for (std::size_t t = 0; t < cols.size(); ++t) {
        const std::size_t col = cols[t];
        std::size_t pivot = t;
        while (pivot < out.rows() && out(pivot, col) == 0) ++pivot;
        if (pivot == out.rows()) return std::nullopt;
        out.swap_rows(t, pivot);
        out.scale_row(t, f.inv(out(t, col)));
        for (std::size_t i = 0; i < out.rows(); ++i) {
            if (i != t && out(i, col) != 0) out.add_scaled_row(i, t, f.neg(out(i, col)));
        }
    }
    return out;
}

std::vector<std::size_t> echelonize(Matrix& mat) {
    const auto& f = mat.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < mat.cols() && row < mat.rows(); ++col) {
        std::size_t p = row;
        while (p < mat.rows() && mat(p, col) == 0) ++p;
        if (p == mat.rows()) continue;
        mat.swap_rows(row, p);
        mat.scale_row(row, f.inv(mat(row, col)));
        for (std::size_t i = 0; i < mat.rows(); ++i) {
            if (i != row && mat(i, col) != 0) mat.add_scaled_row(i, row, f.neg(mat(i, col)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(const Matrix& mat) {
    Matrix work = mat;
    return echelonize(work).size();
}

Matrix random_full_rank(const PrimeField& field, std::size_t rows, std::size_t cols, RandomStream& rng) {
    if (rows > cols) throw InvalidParameters("random_full_rank: rows must not exceed cols");
    for (;;) {
        Matrix m = Matrix::uniform(field, rows, cols, rng);
        if (rank(m) == rows) return m;
    }
}

std::optional<Matrix> solve_row_combination(const Matrix& target, const Matrix& basis) {
    if (target.cols() != basis.cols()) throw InvalidParameters("solve_row_combination: column count mismatch");
    const auto& f = basis.field();
    const std::size_t b = basis.rows();
    const std::size_t t = target.rows();
    // basis^T S^T = target^T, solved on the augmented (n x (b + t)) system.
    Matrix aug(f, basis.cols(), b + t);
    for (std::size_t j = 0; j < basis.cols(); ++j) {
        for (std::size_t i = 0; i < b; ++i) aug(j, i) = basis(i, j);
        for (std::size_t i = 0; i < t; ++i) aug(j, b + i) = target(i, j);
    }
    const auto pivots = echelonize(aug);
    std::size_t basis_pivots = 0;
    for (auto p : pivots) {
        if (p < b) ++basis_pivots;
        else return std::nullopt;  // a pivot in the right-hand side: inconsistent
    }
    if (basis_pivots != b) throw InvalidParameters("solve_row_combination: basis is rank deficient");
    Matrix S(f, t, b);
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t k = 0; k < t; ++k) S(k, i) = aug(i, b + k);
    return S;
}

Matrix kernel_basis(const Matrix& mat) {
    const auto& f = mat.field();
    Matrix work = mat;
    const auto pivots = echelonize(work);
    std::vector<bool> is_pivot(mat.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    Matrix basis(f, mat.cols() - pivots.size(), mat.cols());
    std::size_t r = 0;
    for (std::size_t free = 0; free < mat.cols(); ++free) {
        if (is_pivot[free]) continue;
        basis(r, free) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) basis(r, pivots[i]) = f.neg(work(i, free));
        ++r;
    }
    return basis;
}

std::optional<Matrix> inverse(const Matrix& mat) {
    if (mat.rows() != mat.cols()) throw InvalidParameters("inverse: matrix is not square");
    const std::size_t n = mat.rows();
    Matrix aug(mat.field(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = mat(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<std::size_t> cols(n);
    for (std::size_t i = 0; i < n; ++i) cols[i] = i;
    auto reduced = rref(aug, cols);
    if (!reduced) return std::nullopt;
    return reduced->block(0, n, n, n);
}

}  // namespace pkp
