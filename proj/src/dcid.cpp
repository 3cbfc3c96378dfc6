#include "dcid/dcid.hpp"

#include "dcid/error.hpp"
#include "dcid/rng.hpp"

#include <cmath>
#include <future>
#include <string>

namespace dcid {
namespace {

struct Fitted {
    FeatureMap map;
    LossTrace trace;
};

Fitted fit_predictor(const DcidConfig& cfg, const Matrix& x, const Vector& y, const Matrix& x_val,
                     const Vector& y_val, std::string_view label)
{
    if (cfg.representation == Representation::linear) {
        return Fitted{fit_ols(x, Matrix(y)), {}};
    }
    MlpSpec spec = cfg.net;
    spec.input_dim = x.cols();
    spec.output_dim = 1;
    spec.seed = derive_seed(cfg.net.seed, label);
    TrainConfig train_cfg = cfg.train;
    train_cfg.shuffle_seed = derive_seed(cfg.train.shuffle_seed, label);

    Mlp net = init_mlp(spec);
    net.fit_input_scaling(x);
    TrainedMlp trained = train(std::move(net), x, Matrix(y), train_cfg, x_val, Matrix(y_val));
    return Fitted{std::move(trained.model), std::move(trained.trace)};
}

} // namespace

std::string to_string(Representation r)
{
    return r == Representation::mlp ? "mlp" : "linear";
}

Representation parse_representation(const std::string& text)
{
    if (text == "mlp") return Representation::mlp;
    if (text == "linear") return Representation::linear;
    throw ValidationError("unknown representation '" + text + "' (expected mlp or linear)");
}

void DcidConfig::validate() const
{
    if (!(threshold >= 0.0 && threshold < 1.0)) {
        throw ValidationError("dcid: threshold must lie in [0, 1)");
    }
    if (representation == Representation::mlp) {
        MlpSpec probe = net;
        probe.input_dim = std::max<Index>(probe.input_dim, 1);
        probe.output_dim = 1;
        probe.validate();
        train.validate();
    }
}

Matrix feature_map_features(const FeatureMap& f, const Matrix& x)
{
    if (const auto* mlp = std::get_if<Mlp>(&f)) {
        return mlp->features(x);
    }
    return std::get<OlsModel>(f).predict(x);
}

FeatureScaling FeatureScaling::fit(const Matrix& features)
{
    FeatureScaling s;
    s.mean = features.colwise().mean().transpose();
    s.inv_scale.resize(features.cols());
    for (Index j = 0; j < features.cols(); ++j) {
        const double sd = std::sqrt((features.col(j).array() - s.mean(j)).square().mean());
        s.inv_scale(j) = sd > 1e-12 * (1.0 + std::abs(s.mean(j))) ? 1.0 / sd : 0.0;
    }
    return s;
}

Matrix FeatureScaling::apply(const Matrix& features) const
{
    if (features.cols() != mean.size()) {
        throw ValidationError("feature scaling: expected " + std::to_string(mean.size()) + " columns");
    }
    return (features.rowwise() - mean.transpose()) * inv_scale.asDiagonal();
}

Matrix SharedEstimate::features_1(const Matrix& x) const
{
    return scaling_1.apply(feature_map_features(f1, x));
}

Matrix SharedEstimate::features_2(const Matrix& x) const
{
    return scaling_2.apply(feature_map_features(f2, x));
}

Index count_selected(const Vector& correlations, double threshold)
{
    Index n = 0;
    while (n < correlations.size() && correlations(n) > threshold) {
        ++n;
    }
    return n;
}

void select_components(SharedEstimate& est, Index n)
{
    if (n < 0 || n > est.cca.components()) {
        throw ValidationError("select_components: " + std::to_string(n) + " is outside [0, " +
                              std::to_string(est.cca.components()) + "]");
    }
    est.n_selected = n;
    est.projection_1 = est.cca.u.leftCols(n);
    est.projection_2 = est.cca.v.leftCols(n);
    est.selected_correlations = est.cca.correlations.head(n);
}

SharedEstimate fit_dcid(const GroundTruthDataset& dataset, const DcidConfig& cfg)
{
    cfg.validate();
    dataset.validate();
    const auto train_rows = dataset.rows_in(Split::train);
    const auto val_rows = dataset.rows_in(Split::val);
    const Index k = cfg.representation == Representation::mlp ? cfg.net.feature_dim : 1;
    if (static_cast<Index>(train_rows.size()) < 10 * k) {
        throw ValidationError("fit_dcid: " + std::to_string(train_rows.size()) +
                              " training rows, need at least 10 x feature_dim = " + std::to_string(10 * k));
    }
    const Matrix x = select_rows(dataset.x, train_rows);
    const Matrix x_val = select_rows(dataset.x, val_rows);
    const Vector y1 = select_rows(dataset.y1, train_rows);
    const Vector y2 = select_rows(dataset.y2, train_rows);
    const Vector y1_val = select_rows(dataset.y1, val_rows);
    const Vector y2_val = select_rows(dataset.y2, val_rows);

    Fitted h1;
    Fitted h2;
    if (cfg.concurrent_training && cfg.representation == Representation::mlp) {
        auto second = std::async(std::launch::async,
                                 [&] { return fit_predictor(cfg, x, y2, x_val, y2_val, "dcid.h2"); });
        h1 = fit_predictor(cfg, x, y1, x_val, y1_val, "dcid.h1");
        h2 = second.get();
    } else {
        h1 = fit_predictor(cfg, x, y1, x_val, y1_val, "dcid.h1");
        h2 = fit_predictor(cfg, x, y2, x_val, y2_val, "dcid.h2");
    }

    SharedEstimate est;
    est.config = cfg;
    est.f1 = std::move(h1.map);
    est.f2 = std::move(h2.map);
    est.trace_1 = std::move(h1.trace);
    est.trace_2 = std::move(h2.trace);

    const Matrix raw_1 = feature_map_features(est.f1, x);
    const Matrix raw_2 = feature_map_features(est.f2, x);
    est.scaling_1 = FeatureScaling::fit(raw_1);
    est.scaling_2 = FeatureScaling::fit(raw_2);
    est.cca = fit_cca(est.scaling_1.apply(raw_1), est.scaling_2.apply(raw_2));
    select_components(est, count_selected(est.cca.correlations, cfg.threshold));
    return est;
}

Matrix one_sided_estimate(const SharedEstimate& est, const Matrix& x)
{
    if (est.n_selected == 0) {
        throw EmptyEstimateError("shared estimate selected no components; there is no prediction function "
                                 "(score it as empty instead)");
    }
    const Matrix b1 = est.features_1(x);
    return (b1.rowwise() - est.cca.means_1.transpose()) * est.projection_1;
}

Matrix predict_shared(const SharedEstimate& est, const Matrix& x)
{
    const Matrix c1 = one_sided_estimate(est, x);
    const Matrix b2 = est.features_2(x);
    const Matrix c2 = (b2.rowwise() - est.cca.means_2.transpose()) * est.projection_2;
    return 0.5 * (c1 + c2);
}

SurrogateResult surrogate_psi1(const SharedEstimate& est, const GroundTruthDataset& dataset,
                               const R2Options& options)
{
    dataset.validate();
    const auto train_rows = dataset.rows_in(Split::train);
    const auto test_rows = dataset.rows_in(Split::test);
    const Matrix s_train = one_sided_estimate(est, select_rows(dataset.x, train_rows));
    const Matrix s_test = one_sided_estimate(est, select_rows(dataset.x, test_rows));
    const Vector y1_test = select_rows(dataset.y1, test_rows);
    const Vector y2_test = select_rows(dataset.y2, test_rows);

    const OlsModel readout = fit_ols(s_train, Matrix(select_rows(dataset.y1, train_rows)));
    SurrogateResult out;
    out.psi1_hat = readout.predict(s_test).col(0);
    out.r2_y1 = r_squared(s_test, y1_test, options);
    out.r2_y2 = r_squared(s_test, y2_test, options);
    out.corr_psi1_y2 = pearson(out.psi1_hat, y2_test);
    out.corr_y1_y2 = pearson(y1_test, y2_test);
    return out;
}

} // namespace dcid
