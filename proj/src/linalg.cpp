#include "dcid/linalg.hpp"

#include "dcid/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace dcid::linalg {
namespace {

std::vector<Index> descending_order(const Vector& values)
{
    std::vector<Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return values(a) > values(b); });
    return order;
}

} // namespace

SymmetricEigen jacobi_eigen(const Matrix& symmetric, double tolerance, int max_sweeps)
{
    if (symmetric.rows() != symmetric.cols()) {
        throw ValidationError("jacobi_eigen: matrix is not square");
    }
    const Index n = symmetric.rows();
    Matrix a = 0.5 * (symmetric + symmetric.transpose());
    Matrix v = Matrix::Identity(n, n);

    const double scale = std::max(a.norm(), 1e-300);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (Index p = 0; p < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                off += a(p, q) * a(p, q);
            }
        }
        if (std::sqrt(off) <= tolerance * scale) {
            break;
        }
        for (Index p = 0; p < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) {
                    continue;
                }
                // Rotation angle that zeroes a(p, q).
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    const Vector diag = a.diagonal();
    const auto order = descending_order(diag);
    SymmetricEigen out{Vector(n), Matrix(n, n)};
    for (Index i = 0; i < n; ++i) {
        out.values(i) = diag(order[static_cast<std::size_t>(i)]);
        out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
    }
    return out;
}

Svd jacobi_svd(const Matrix& a, double tolerance, int max_sweeps)
{
    // Orthogonalize the columns of a tall working copy; transpose wide input.
    const bool transposed = a.rows() < a.cols();
    Matrix w = transposed ? Matrix(a.transpose()) : a;
    const Index n = w.cols();
    Matrix v = Matrix::Identity(n, n);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (Index p = 0; p < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const double alpha = w.col(p).squaredNorm();
                const double beta = w.col(q).squaredNorm();
                const double gamma = w.col(p).dot(w.col(q));
                if (std::abs(gamma) <= tolerance * std::sqrt(alpha * beta) || gamma == 0.0) {
                    continue;
                }
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (Index k = 0; k < w.rows(); ++k) {
                    const double wp = w(k, p);
                    const double wq = w(k, q);
                    w(k, p) = c * wp - s * wq;
                    w(k, q) = s * wp + c * wq;
                }
                for (Index k = 0; k < n; ++k) {
                    const double vp = v(k, p);
                    const double vq = v(k, q);
                    v(k, p) = c * vp - s * vq;
                    v(k, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) {
            break;
        }
    }

    Vector sigma(n);
    for (Index j = 0; j < n; ++j) {
        sigma(j) = w.col(j).norm();
    }
    const auto order = descending_order(sigma);

    Matrix left(w.rows(), n);
    Matrix right(n, n);
    Vector sorted(n);
    for (Index i = 0; i < n; ++i) {
        const Index j = order[static_cast<std::size_t>(i)];
        sorted(i) = sigma(j);
        right.col(i) = v.col(j);
        if (sigma(j) > 0.0) {
            left.col(i) = w.col(j) / sigma(j);
        } else {
            left.col(i).setZero();
        }
    }

    // Null singular directions get an arbitrary orthonormal completion so U stays orthonormal.
    for (Index i = 0; i < n; ++i) {
        if (sorted(i) > 0.0) {
            continue;
        }
        for (Index e = 0; e < left.rows(); ++e) {
            Vector candidate = Vector::Unit(left.rows(), e);
            for (Index k = 0; k < n; ++k) {
                if (k != i) {
                    candidate -= left.col(k).dot(candidate) * left.col(k);
                }
            }
            const double norm = candidate.norm();
            if (norm > 1e-8) {
                left.col(i) = candidate / norm;
                break;
            }
        }
    }

    if (transposed) {
        return Svd{right, sorted, left};
    }
    return Svd{left, sorted, right};
}

Matrix inverse_sqrt_spd(const Matrix& s, double floor)
{
    const SymmetricEigen eig = jacobi_eigen(s);
    Vector scaled(eig.values.size());
    for (Index i = 0; i < scaled.size(); ++i) {
        scaled(i) = 1.0 / std::sqrt(std::max(eig.values(i), floor));
    }
    return eig.vectors * scaled.asDiagonal() * eig.vectors.transpose();
}

} // namespace dcid::linalg
