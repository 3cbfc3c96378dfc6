#include "dcid/regression.hpp"

#include "dcid/error.hpp"
#include "dcid/log.hpp"
#include "dcid/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace dcid {

Matrix OlsModel::predict(const Matrix& x) const
{
    if (x.cols() != weights.rows()) {
        throw ValidationError("ols predict: expected " + std::to_string(weights.rows()) + " input columns, got " +
                              std::to_string(x.cols()));
    }
    return (x * weights).rowwise() + intercept.transpose();
}

OlsModel fit_ols(const Matrix& x, const Matrix& y)
{
    if (x.rows() != y.rows()) {
        throw ValidationError("fit_ols: x has " + std::to_string(x.rows()) + " rows but y has " +
                              std::to_string(y.rows()));
    }
    if (x.rows() == 0 || y.cols() == 0) {
        throw ValidationError("fit_ols: empty input");
    }
    if (!x.allFinite() || !y.allFinite()) {
        throw ValidationError("fit_ols: non-finite input");
    }
    const Index n = x.rows();
    const Index p = x.cols();

    const RowVector x_mean = x.colwise().mean();
    const RowVector y_mean = y.colwise().mean();
    OlsModel model;
    model.fitted_on = n;

    if (p == 0) {
        model.weights = Matrix::Zero(0, y.cols());
        model.intercept = y_mean.transpose();
        return model;
    }

    const Matrix xc = x.rowwise() - x_mean;
    const Matrix yc = y.rowwise() - y_mean;
    Matrix gram = xc.transpose() * xc;
    const double trace = gram.trace();
    // The ridge handles collinear columns, not a design without usable rows or variance.
    if (n <= p || trace <= 0.0) {
        throw RankDeficiencyError("fit_ols: rank-deficient design, " + std::to_string(n) + " samples for " +
                                  std::to_string(p) + " predictors (need at least " + std::to_string(p + 1) +
                                  " samples with nonzero variance)");
    }
    // Ridge only when the plain normal equations are singular or ill-conditioned.
    Eigen::LLT<Matrix> llt(gram);
    if (llt.info() != Eigen::Success || !(llt.rcond() > 1e-12)) {
        gram.diagonal().array() += 1e-8 * trace / static_cast<double>(p);
        llt.compute(gram);
    }
    if (llt.info() != Eigen::Success) {
        throw RankDeficiencyError("fit_ols: normal equations singular for " + std::to_string(p) + " predictors");
    }
    model.weights = llt.solve(xc.transpose() * yc);
    model.intercept = (y_mean - x_mean * model.weights).transpose();
    if (!model.weights.allFinite() || !model.intercept.allFinite()) {
        throw RankDeficiencyError("fit_ols: non-finite solution");
    }
    return model;
}

double r_squared(const Matrix& x, const Matrix& y, const R2Options& options)
{
    if (x.rows() != y.rows()) {
        throw ValidationError("r_squared: x has " + std::to_string(x.rows()) + " rows but y has " +
                              std::to_string(y.rows()));
    }
    const auto n = static_cast<std::size_t>(x.rows());

    Matrix fit_x;
    Matrix fit_y;
    Matrix score_x;
    Matrix score_y;
    if (options.mode == ProbeMode::held_out) {
        if (!(options.probe_fraction > 0.0 && options.probe_fraction < 1.0)) {
            throw ValidationError("r_squared: probe_fraction must lie in (0, 1)");
        }
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        Rng rng{options.seed};
        std::shuffle(order.begin(), order.end(), rng);
        const auto n_fit = static_cast<std::size_t>(std::llround(options.probe_fraction * static_cast<double>(n)));
        if (n_fit < 2 || n - n_fit < 2) {
            throw ValidationError("r_squared: " + std::to_string(n) + " rows are too few for a held-out probe");
        }
        const std::span<const std::size_t> all(order);
        const auto fit_rows = all.first(n_fit);
        const auto score_rows = all.subspan(n_fit);
        fit_x = select_rows(x, fit_rows);
        fit_y = select_rows(y, fit_rows);
        score_x = select_rows(x, score_rows);
        score_y = select_rows(y, score_rows);
    } else {
        fit_x = x;
        fit_y = y;
        score_x = x;
        score_y = y;
    }

    // A probe without input variance can only predict the mean.
    const bool constant_inputs = (fit_x.rowwise() - fit_x.colwise().mean()).squaredNorm() <= 0.0;
    if (constant_inputs) {
        fit_x = Matrix(fit_x.rows(), 0);
        score_x = Matrix(score_x.rows(), 0);
    }
    const OlsModel model = fit_ols(fit_x, fit_y);
    const Matrix residual = model.predict(score_x) - score_y;
    const RowVector mean = score_y.colwise().mean();

    double total = 0.0;
    Index used = 0;
    for (Index j = 0; j < score_y.cols(); ++j) {
        const double sst = (score_y.col(j).array() - mean(j)).square().sum();
        const double noise_floor = 1e-24 * static_cast<double>(score_y.rows()) * (1.0 + mean(j) * mean(j));
        if (!(sst > noise_floor)) {
            log::warn("r_squared: target column " + std::to_string(j) + " has zero variance and is excluded");
            continue;
        }
        total += residual.col(j).squaredNorm() / sst;
        ++used;
    }
    if (used == 0) {
        throw ValidationError("r_squared: every target column has zero variance");
    }
    const double r2 = 1.0 - total / static_cast<double>(used);
    return std::clamp(r2, 0.0, 1.0);
}

double r_squared(const Matrix& x, const Vector& y, const R2Options& options)
{
    return r_squared(x, Matrix(y), options);
}

} // namespace dcid
