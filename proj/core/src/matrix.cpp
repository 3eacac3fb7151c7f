#include "pkp/matrix.hpp"

#include <algorithm>

#include "pkp/error.hpp"
#include "pkp/instance.hpp"
#include "pkp/rng.hpp"

namespace pkp {

Matrix::Matrix(const PrimeField& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(const PrimeField& field, std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : field_(field), rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw InvalidParameters("ragged matrix literal");
        for (auto v : r) data_.push_back(field_.reduce(v));
    }
}

Matrix Matrix::identity(const PrimeField& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::uniform(const PrimeField& field, std::size_t rows, std::size_t cols, RandomStream& rng) {
    Matrix m(field, rows, cols);
    for (auto& e : m.data_) e = static_cast<Elem>(rng.below(field.modulus()));
    return m;
}

Matrix Matrix::from_rows(const PrimeField& field, const std::vector<Vector>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw InvalidParameters("ragged row list");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = field.reduce(rows[i][j]);
    }
    return m;
}

Vector Matrix::column(std::size_t c) const {
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
    return out;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_, data_.begin() + b * cols_);
}

void Matrix::add_scaled_row(std::size_t dst, std::size_t src, Elem factor) {
    if (factor == 0) return;
    Elem* d = data_.data() + dst * cols_;
    const Elem* s = data_.data() + src * cols_;
    for (std::size_t j = 0; j < cols_; ++j) {
        if (s[j] != 0) d[j] = field_.fma(d[j], factor, s[j]);
    }
}

void Matrix::scale_row(std::size_t r, Elem factor) {
    for (auto& e : row(r)) e = field_.mul(e, factor);
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
    Matrix out(field_, indices.size(), cols_);
    for (std::size_t i = 0; i < indices.size(); ++i) std::ranges::copy(row(indices[i]), out.row(i).begin());
    return out;
}

Matrix Matrix::select_columns(std::span<const std::size_t> indices) const {
    Matrix out(field_, rows_, indices.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < indices.size(); ++j) out(i, j) = (*this)(i, indices[j]);
    return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const {
    Matrix out(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
}

Matrix Matrix::permute_columns(const Permutation& perm) const {
    if (perm.size() != cols_) throw InvalidParameters("column permutation size mismatch");
    return select_columns(perm.mapping());
}

Matrix Matrix::stack(const Matrix& lower) const {
    if (lower.cols_ != cols_) throw InvalidParameters("stack: column count mismatch");
    Matrix out(field_, rows_ + lower.rows_, cols_);
    std::ranges::copy(data_, out.data_.begin());
    std::ranges::copy(lower.data_, out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return out;
}

bool Matrix::is_zero() const noexcept {
    return std::ranges::all_of(data_, [](Elem e) { return e == 0; });
}

std::vector<std::size_t> Matrix::support() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < cols_; ++j) {
        for (std::size_t i = 0; i < rows_; ++i) {
            if ((*this)(i, j) != 0) {
                out.push_back(j);
                break;
            }
        }
    }
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw InvalidParameters("matrix product: inner dimensions differ");
    const auto& f = a.field();
    Matrix out(f, a.rows(), b.cols());
    const Matrix bt = b.transpose();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.dot(a.row(i), bt.row(j));
    return out;
}

Vector mul_transpose(std::span<const Elem> x, const Matrix& m) {
    if (x.size() != m.cols()) throw InvalidParameters("syndrome: length mismatch");
    Vector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) out[i] = m.field().dot(x, m.row(i));
    return out;
}

Vector mul(std::span<const Elem> x, const Matrix& m) {
    if (x.size() != m.rows()) throw InvalidParameters("vector-matrix product: length mismatch");
    const auto& f = m.field();
    Vector out(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] = f.fma(out[j], x[i], m(i, j));
    }
    return out;
}

}  // namespace pkp
