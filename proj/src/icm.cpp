#include "dcid/icm.hpp"

#include "dcid/error.hpp"

#include <string>

namespace dcid {
namespace {

void check_estimate(const Matrix& z_hat, Index rows)
{
    if (z_hat.cols() == 0) {
        throw ValidationError("icm: the estimate has no columns");
    }
    if (z_hat.rows() != rows) {
        throw ValidationError("icm: the estimate has " + std::to_string(z_hat.rows()) + " rows, ground truth has " +
                              std::to_string(rows));
    }
    if (!z_hat.allFinite()) {
        throw ValidationError("icm: the estimate has non-finite entries");
    }
}

bool carries_variance(const Matrix& m)
{
    for (Index j = 0; j < m.cols(); ++j) {
        if (m.col(j).maxCoeff() > m.col(j).minCoeff()) {
            return true;
        }
    }
    return false;
}

} // namespace

double informativeness(const Matrix& z_hat, const Matrix& z, const R2Options& options)
{
    check_estimate(z_hat, z.rows());
    return r_squared(z_hat, z, options);
}

double compactness(const Matrix& z, const Matrix& z_hat, const R2Options& options)
{
    check_estimate(z_hat, z.rows());
    return r_squared(z, z_hat, options);
}

double minimality(const Matrix& z_hat, const Matrix& z1, const Matrix& z2, const R2Options& options)
{
    check_estimate(z_hat, z1.rows());
    return 1.0 - r_squared(z_hat, hstack(z1, z2), options);
}

IcmScore score_icm(const Matrix& z_hat, const Matrix& z, const Matrix& z1, const Matrix& z2,
                   const R2Options& options)
{
    IcmScore score;
    score.n_components = z_hat.cols();
    // An estimate without variance recovers nothing, like an empty one.
    if (z_hat.cols() == 0 || !carries_variance(z_hat)) {
        return score;
    }
    score.informativeness = informativeness(z_hat, z, options);
    score.compactness = compactness(z, z_hat, options);
    score.minimality = minimality(z_hat, z1, z2, options);
    score.icm = score.informativeness * score.compactness * score.minimality;
    return score;
}

IcmScore score_icm(const Matrix& z_hat_test, const GroundTruthDataset& dataset, const R2Options& options)
{
    const auto test = dataset.rows_in(Split::test);
    if (z_hat_test.rows() != static_cast<Index>(test.size())) {
        throw ValidationError("score_icm: estimate has " + std::to_string(z_hat_test.rows()) +
                              " rows but the dataset has " + std::to_string(test.size()) + " test rows");
    }
    return score_icm(z_hat_test, select_rows(dataset.z, test), select_rows(dataset.z1, test),
                     select_rows(dataset.z2, test), options);
}

} // namespace dcid
