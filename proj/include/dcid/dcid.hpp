#pragma once

#include "dcid/cca.hpp"
#include "dcid/nets.hpp"
#include "dcid/regression.hpp"
#include "dcid/scenario.hpp"
#include "dcid/types.hpp"

#include <string>
#include <variant>

namespace dcid {

enum class Representation {
    mlp,   // penultimate-layer features of a trained MLP
    linear // the OLS prediction itself as a single feature
};

std::string to_string(Representation r);
Representation parse_representation(const std::string& text);

struct DcidConfig {
    double threshold = 0.5; // T; components with correlation strictly above it are kept
    Representation representation = Representation::mlp;
    MlpSpec net;       // input_dim and output_dim are set from the data
    TrainConfig train; // seeds are split per predictor
    bool concurrent_training = true;

    void validate() const;
};

using FeatureMap = std::variant<Mlp, OlsModel>;

Matrix feature_map_features(const FeatureMap& f, const Matrix& x);

/// Per-column z-scoring fitted on training features. Columns that were
/// constant there map to zero.
struct FeatureScaling {
    Vector mean;
    Vector inv_scale; // 0 for constant columns

    static FeatureScaling fit(const Matrix& features);
    Matrix apply(const Matrix& features) const;
};

struct SharedEstimate {
    DcidConfig config;
    FeatureMap f1;
    FeatureMap f2;
    FeatureScaling scaling_1;
    FeatureScaling scaling_2;
    CcaModel cca;
    Index n_selected = 0;
    Matrix projection_1; // k1 x n, leading columns of cca.u
    Matrix projection_2; // k2 x n, leading columns of cca.v
    Vector selected_correlations;
    LossTrace trace_1; // empty for the linear representation
    LossTrace trace_2;

    /// Standardized feature blocks b1 = f1(x), b2 = f2(x).
    Matrix features_1(const Matrix& x) const;
    Matrix features_2(const Matrix& x) const;
};

/// Number of leading correlations strictly greater than the threshold.
Index count_selected(const Vector& correlations, double threshold);

/// Trains h1: x -> y1 and h2: x -> y2 on the training rows, runs CCA on their
/// standardized features and keeps the components correlated above the
/// threshold. Selecting nothing is a valid outcome.
SharedEstimate fit_dcid(const GroundTruthDataset& dataset, const DcidConfig& cfg);

/// Keeps only the first n canonical pairs of a fitted estimate.
void select_components(SharedEstimate& est, Index n);

/// z_hat = (U_n^T (b1 - m1) + V_n^T (b2 - m2)) / 2, row-wise.
/// Throws EmptyEstimateError when no component was selected.
Matrix predict_shared(const SharedEstimate& est, const Matrix& x);

/// U_n^T (b1 - m1): the shared estimate built from the first predictor only.
Matrix one_sided_estimate(const SharedEstimate& est, const Matrix& x);

struct SurrogateResult {
    Vector psi1_hat; // test rows, in test-row order
    double r2_y1 = 0.0;
    double r2_y2 = 0.0;
    double corr_psi1_y2 = 0.0;
    double corr_y1_y2 = 0.0;
};

/// Reconstructs the shared part of y1 from the one-sided estimate: an OLS
/// readout fitted on training rows and evaluated on test rows. r2_y1 and r2_y2
/// are the R^2 of the one-sided estimate for y1 and y2 on the test rows.
SurrogateResult surrogate_psi1(const SharedEstimate& est, const GroundTruthDataset& dataset,
                               const R2Options& options = {});

} // namespace dcid
