#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace dcid {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using Index = Eigen::Index;

/// Gathers the listed rows of m into a new matrix.
Matrix select_rows(const Matrix& m, std::span<const std::size_t> rows);
Vector select_rows(const Vector& v, std::span<const std::size_t> rows);

/// Gathers the listed columns of m into a new matrix.
Matrix select_cols(const Matrix& m, std::span<const std::size_t> cols);

Matrix hstack(const Matrix& a, const Matrix& b);

bool all_finite(const Matrix& m);

/// Pearson correlation of two equally long vectors. Zero when either is constant.
double pearson(const Vector& a, const Vector& b);

} // namespace dcid
