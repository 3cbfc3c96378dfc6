#pragma once

#include "dcid/rng.hpp"
#include "dcid/types.hpp"

#include <cstdint>
#include <random>

namespace dcid::test {

inline Matrix normal_matrix(Index rows, Index cols, std::uint64_t seed)
{
    Rng rng{seed};
    std::normal_distribution<double> dist;
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            m(i, j) = dist(rng);
        }
    }
    return m;
}

inline Index uniform_index(Rng& rng, Index lo, Index hi)
{
    return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Random orthogonal matrix from the QR of a Gaussian draw.
inline Matrix random_orthogonal(Index n, std::uint64_t seed)
{
    const Eigen::HouseholderQR<Matrix> qr(normal_matrix(n, n, seed));
    return qr.householderQ() * Matrix::Identity(n, n);
}

inline double max_abs_diff(const Matrix& a, const Matrix& b)
{
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace dcid::test
