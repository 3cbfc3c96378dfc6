#pragma once

#include "dcid/types.hpp"

namespace dcid::linalg {

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Eigenvalues are sorted descending; eigenvectors are the matching columns.
struct SymmetricEigen {
    Vector values;
    Matrix vectors;
};

SymmetricEigen jacobi_eigen(const Matrix& symmetric, double tolerance = 1e-15, int max_sweeps = 100);

/// Thin SVD a = U diag(S) V^T by one-sided (Hestenes) Jacobi. With
/// r = min(rows, cols), U is rows x r, V is cols x r, and S is sorted descending.
struct Svd {
    Matrix u;
    Vector singular_values;
    Matrix v;
};

Svd jacobi_svd(const Matrix& a, double tolerance = 1e-15, int max_sweeps = 100);

/// S^{-1/2} for a symmetric positive definite S. Eigenvalues below `floor` are
/// clamped to it.
Matrix inverse_sqrt_spd(const Matrix& s, double floor = 1e-300);

} // namespace dcid::linalg
