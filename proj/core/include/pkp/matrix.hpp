#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "pkp/field.hpp"

namespace pkp {

class Permutation;
class RandomStream;

/// Dense row-major matrix over a prime field.
class Matrix {
public:
    Matrix(const PrimeField& field, std::size_t rows, std::size_t cols);
    /// Entries are reduced mod q.
    Matrix(const PrimeField& field, std::initializer_list<std::initializer_list<std::int64_t>> rows);

    static Matrix zero(const PrimeField& field, std::size_t rows, std::size_t cols) {
        return Matrix(field, rows, cols);
    }
    static Matrix identity(const PrimeField& field, std::size_t n);
    static Matrix uniform(const PrimeField& field, std::size_t rows, std::size_t cols, RandomStream& rng);
    static Matrix from_rows(const PrimeField& field, const std::vector<Vector>& rows);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vector column(std::size_t c) const;

    std::span<const Elem> data() const noexcept { return data_; }

    void swap_rows(std::size_t a, std::size_t b);
    /// row[dst] += factor * row[src]
    void add_scaled_row(std::size_t dst, std::size_t src, Elem factor);
    void scale_row(std::size_t r, Elem factor);

    Matrix transpose() const;
    Matrix select_rows(std::span<const std::size_t> indices) const;
    Matrix select_columns(std::span<const std::size_t> indices) const;
    /// Contiguous block [r0, r0+nr) x [c0, c0+nc).
    Matrix block(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const;
    /// Column j of the result is column perm[j] of this matrix.
    Matrix permute_columns(const Permutation& perm) const;
    /// Rows of `lower` appended below this matrix.
    Matrix stack(const Matrix& lower) const;

    bool is_zero() const noexcept;
    /// Column indices holding at least one nonzero entry.
    std::vector<std::size_t> support() const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

/// x * M^T, i.e. the syndrome of x under parity-check matrix M.
Vector mul_transpose(std::span<const Elem> x, const Matrix& m);
/// x * M
Vector mul(std::span<const Elem> x, const Matrix& m);

}  // namespace pkp
