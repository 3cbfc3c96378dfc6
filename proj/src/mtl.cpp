#include "dcid/mtl.hpp"

#include "dcid/error.hpp"

#include <string>

namespace dcid {

MtlModel train_mtl(const GroundTruthDataset& dataset, MlpSpec spec, const TrainConfig& cfg)
{
    dataset.validate();
    const auto train_rows = dataset.rows_in(Split::train);
    const auto val_rows = dataset.rows_in(Split::val);
    if (static_cast<Index>(train_rows.size()) < 10 * spec.feature_dim) {
        throw ValidationError("train_mtl: " + std::to_string(train_rows.size()) +
                              " training rows, need at least 10 x feature_dim = " +
                              std::to_string(10 * spec.feature_dim));
    }
    const auto targets = [&](const std::vector<std::size_t>& rows) {
        Matrix y(static_cast<Index>(rows.size()), 2);
        y.col(0) = select_rows(dataset.y1, rows);
        y.col(1) = select_rows(dataset.y2, rows);
        return y;
    };
    const Matrix x = select_rows(dataset.x, train_rows);

    spec.input_dim = dataset.x.cols();
    spec.output_dim = 2;
    Mlp net = init_mlp(spec);
    net.fit_input_scaling(x);
    TrainedMlp trained = train(std::move(net), x, targets(train_rows), cfg, select_rows(dataset.x, val_rows),
                               targets(val_rows));
    return MtlModel{std::move(trained.model), std::move(trained.trace)};
}

std::vector<std::size_t> select_shared_features(const Vector& g1, const Vector& g2, double t_mtl)
{
    if (g1.size() != g2.size()) {
        throw ValidationError("select_shared_features: heads have different widths");
    }
    if (!(t_mtl >= 0.0 && t_mtl <= 1.0)) {
        throw ValidationError("select_shared_features: t_mtl must lie in [0, 1]");
    }
    const double max1 = g1.size() > 0 ? g1.cwiseAbs().maxCoeff() : 0.0;
    const double max2 = g2.size() > 0 ? g2.cwiseAbs().maxCoeff() : 0.0;
    if (!(max1 > 0.0) || !(max2 > 0.0)) {
        throw SelectionError("select_shared_features: a head has all-zero weights, normalization is undefined");
    }
    std::vector<std::size_t> out;
    for (Index i = 0; i < g1.size(); ++i) {
        if (std::abs(g1(i)) / max1 >= t_mtl && std::abs(g2(i)) / max2 >= t_mtl) {
            out.push_back(static_cast<std::size_t>(i));
        }
    }
    return out;
}

std::vector<std::size_t> select_shared_features(const MtlModel& model, double t_mtl)
{
    return select_shared_features(model.head_1(), model.head_2(), t_mtl);
}

} // namespace dcid
