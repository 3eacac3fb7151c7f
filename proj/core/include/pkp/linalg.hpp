#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pkp/matrix.hpp"

namespace pkp {

class RandomStream;

/// A_J^{-1} A. Columns are processed in the order of `cols`, so column
/// cols[t] of the result is the t-th unit vector. Returns nullopt when A_J
/// is singular; callers resample J.
std::optional<Matrix> rref(const Matrix& mat, std::span<const std::size_t> cols);

/// Reduced row echelon form with pivots taken left to right.
/// Zero rows are moved to the bottom; returns the pivot columns.
std::vector<std::size_t> echelonize(Matrix& mat);

std::size_t rank(const Matrix& mat);

/// Uniform element of GL_{rows,cols} by rejection sampling.
Matrix random_full_rank(const PrimeField& field, std::size_t rows, std::size_t cols, RandomStream& rng);

/// S with target = S * basis, or nullopt when some row of target is not in
/// the row space. `basis` must have full row rank.
std::optional<Matrix> solve_row_combination(const Matrix& target, const Matrix& basis);

/// Rows form a basis of {x : mat * x^T = 0}.
Matrix kernel_basis(const Matrix& mat);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& mat);

}  // namespace pkp
