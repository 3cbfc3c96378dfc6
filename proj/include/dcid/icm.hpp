#pragma once

#include "dcid/regression.hpp"
#include "dcid/scenario.hpp"
#include "dcid/types.hpp"

namespace dcid {

struct IcmScore {
    double informativeness = 0.0;
    double compactness = 0.0;
    double minimality = 0.0;
    double icm = 0.0;
    Index n_components = 0;
};

/// R^2(z_hat -> z): how much of the shared latent the estimate explains.
double informativeness(const Matrix& z_hat, const Matrix& z, const R2Options& options = {});

/// R^2(z -> z_hat): how much of the estimate the shared latent explains.
double compactness(const Matrix& z, const Matrix& z_hat, const R2Options& options = {});

/// 1 - R^2(z_hat -> [z1, z2]): absence of individual-latent signal.
double minimality(const Matrix& z_hat, const Matrix& z1, const Matrix& z2, const R2Options& options = {});

/// All three sub-scores and their product, against explicit ground truth. An
/// estimate with no columns, or only constant ones, scores zero everywhere.
IcmScore score_icm(const Matrix& z_hat, const Matrix& z, const Matrix& z1, const Matrix& z2,
                   const R2Options& options = {});

/// Scores an estimate given on the dataset's test rows (in test-row order).
IcmScore score_icm(const Matrix& z_hat_test, const GroundTruthDataset& dataset, const R2Options& options = {});

} // namespace dcid
