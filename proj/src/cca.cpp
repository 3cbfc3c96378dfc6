#include "dcid/cca.hpp"

#include "dcid/error.hpp"
#include "dcid/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace dcid {
namespace {

Matrix whitening(const Matrix& centered)
{
    const auto n = static_cast<double>(centered.rows() - 1);
    Matrix cov = centered.transpose() * centered / n;
    const double trace = cov.trace();
    // Eigenvalues under eps = 1e-6 * trace / dim are raised to eps; better
    // conditioned directions whiten exactly.
    const double eps = trace > 0.0 ? 1e-6 * trace / static_cast<double>(cov.rows()) : 1e-12;
    return linalg::inverse_sqrt_spd(cov, eps);
}

void check_view(const Matrix& b, const char* name)
{
    if (b.cols() == 0) {
        throw ValidationError(std::string("fit_cca: view ") + name + " has no columns");
    }
    if (!b.allFinite()) {
        throw ValidationError(std::string("fit_cca: view ") + name + " has non-finite entries");
    }
}

} // namespace

CcaModel fit_cca(const Matrix& b1, const Matrix& b2)
{
    check_view(b1, "1");
    check_view(b2, "2");
    if (b1.rows() != b2.rows()) {
        throw ValidationError("fit_cca: views have " + std::to_string(b1.rows()) + " and " +
                              std::to_string(b2.rows()) + " rows");
    }
    const Index n = b1.rows();
    const Index p = b1.cols();
    const Index q = b2.cols();
    if (n <= std::max(p, q) + 1) {
        throw ValidationError("fit_cca: " + std::to_string(n) + " samples are too few for views of width " +
                              std::to_string(p) + " and " + std::to_string(q) + " (need more than " +
                              std::to_string(std::max(p, q) + 1) + ")");
    }

    CcaModel model;
    model.means_1 = b1.colwise().mean().transpose();
    model.means_2 = b2.colwise().mean().transpose();
    const Matrix c1 = b1.rowwise() - model.means_1.transpose();
    const Matrix c2 = b2.rowwise() - model.means_2.transpose();

    const Matrix w1 = whitening(c1);
    const Matrix w2 = whitening(c2);
    const Matrix cross = c1.transpose() * c2 / static_cast<double>(n - 1);
    const linalg::Svd svd = linalg::jacobi_svd(w1 * cross * w2);

    const Index d = std::min(p, q);
    Matrix u = w1 * svd.u.leftCols(d);
    Matrix v = w2 * svd.v.leftCols(d);

    // Rescale to unit variance on the sample and measure each pair's correlation
    // directly, so reported correlations are exactly those of the projections.
    Matrix k1 = c1 * u;
    Matrix k2 = c2 * v;
    // Whitened directions have norm ~sqrt(n - 1); far smaller ones span null
    // directions of a view and carry no correlation.
    const double unit = std::sqrt(static_cast<double>(n - 1));
    const double null_norm = 1e-6 * unit;
    Vector corr(d);
    for (Index i = 0; i < d; ++i) {
        const double s1 = k1.col(i).norm();
        const double s2 = k2.col(i).norm();
        const bool live = s1 > null_norm && s2 > null_norm;
        if (live) {
            u.col(i) *= unit / s1;
            v.col(i) *= unit / s2;
        }
        corr(i) = live ? k1.col(i).dot(k2.col(i)) / (s1 * s2) : 0.0;
        if (corr(i) < 0.0) {
            v.col(i) *= -1.0;
            corr(i) = -corr(i);
        }
        Index arg = 0;
        u.col(i).cwiseAbs().maxCoeff(&arg);
        if (u(arg, i) < 0.0) {
            u.col(i) *= -1.0;
            v.col(i) *= -1.0;
        }
    }

    std::vector<Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return corr(a) > corr(b); });

    model.u.resize(p, d);
    model.v.resize(q, d);
    model.correlations.resize(d);
    for (Index i = 0; i < d; ++i) {
        const Index j = order[static_cast<std::size_t>(i)];
        model.u.col(i) = u.col(j);
        model.v.col(i) = v.col(j);
        model.correlations(i) = std::clamp(corr(j), 0.0, 1.0);
    }
    return model;
}

Matrix transform_first(const CcaModel& model, const Matrix& b1)
{
    if (b1.cols() != model.u.rows()) {
        throw ValidationError("cca transform: view 1 has " + std::to_string(b1.cols()) + " columns, model expects " +
                              std::to_string(model.u.rows()));
    }
    return (b1.rowwise() - model.means_1.transpose()) * model.u;
}

Matrix transform_second(const CcaModel& model, const Matrix& b2)
{
    if (b2.cols() != model.v.rows()) {
        throw ValidationError("cca transform: view 2 has " + std::to_string(b2.cols()) + " columns, model expects " +
                              std::to_string(model.v.rows()));
    }
    return (b2.rowwise() - model.means_2.transpose()) * model.v;
}

CcaComponents transform(const CcaModel& model, const Matrix& b1, const Matrix& b2)
{
    return CcaComponents{transform_first(model, b1), transform_second(model, b2)};
}

} // namespace dcid
