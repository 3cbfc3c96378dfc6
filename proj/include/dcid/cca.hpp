#pragma once

#include "dcid/types.hpp"

namespace dcid {

/// Linear CCA between two views. Components are ordered by descending
/// canonical correlation and have unit variance on the fitting sample.
struct CcaModel {
    Matrix u;            // p x d
    Matrix v;            // q x d
    Vector correlations; // d = min(p, q), non-increasing, in [0, 1]
    Vector means_1;      // p
    Vector means_2;      // q

    Index components() const { return correlations.size(); }
};

struct CcaComponents {
    Matrix c1; // N x d
    Matrix c2; // N x d
};

/// Centers both views, whitens each with the inverse square root of its
/// covariance (eigenvalues floored at 1e-6 * trace / dim), and takes the SVD
/// of the whitened cross-covariance. Column pairs are sign-normalized so the largest-magnitude
/// entry of each u column is positive.
CcaModel fit_cca(const Matrix& b1, const Matrix& b2);

/// c1 = (b1 - means_1) u, c2 = (b2 - means_2) v.
CcaComponents transform(const CcaModel& model, const Matrix& b1, const Matrix& b2);

Matrix transform_first(const CcaModel& model, const Matrix& b1);
Matrix transform_second(const CcaModel& model, const Matrix& b2);

} // namespace dcid
