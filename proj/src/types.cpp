#include "dcid/types.hpp"

#include <cmath>

namespace dcid {

Matrix select_rows(const Matrix& m, std::span<const std::size_t> rows)
{
    Matrix out(static_cast<Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.row(static_cast<Index>(i)) = m.row(static_cast<Index>(rows[i]));
    }
    return out;
}

Vector select_rows(const Vector& v, std::span<const std::size_t> rows)
{
    Vector out(static_cast<Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out(static_cast<Index>(i)) = v(static_cast<Index>(rows[i]));
    }
    return out;
}

Matrix select_cols(const Matrix& m, std::span<const std::size_t> cols)
{
    Matrix out(m.rows(), static_cast<Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        out.col(static_cast<Index>(j)) = m.col(static_cast<Index>(cols[j]));
    }
    return out;
}

Matrix hstack(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows(), a.cols() + b.cols());
    out << a, b;
    return out;
}

bool all_finite(const Matrix& m)
{
    return m.allFinite();
}

double pearson(const Vector& a, const Vector& b)
{
    const Vector ac = a.array() - a.mean();
    const Vector bc = b.array() - b.mean();
    const double denom = std::sqrt(ac.squaredNorm() * bc.squaredNorm());
    if (denom <= 0.0) {
        return 0.0;
    }
    return ac.dot(bc) / denom;
}

} // namespace dcid
