#pragma once

#include "dcid/nets.hpp"
#include "dcid/scenario.hpp"
#include "dcid/types.hpp"

#include <cstddef>
#include <vector>

namespace dcid {

/// Shared trunk with one affine head per target: head column t is G_t.
struct MtlModel {
    Mlp net; // output_dim == 2
    LossTrace trace;

    Vector head_1() const { return net.head_weights.col(0); }
    Vector head_2() const { return net.head_weights.col(1); }
};

/// Jointly fits both targets on the training rows by minimizing the sum of the
/// two MSE losses. `spec.input_dim` and `spec.output_dim` are set from the data.
MtlModel train_mtl(const GroundTruthDataset& dataset, MlpSpec spec, const TrainConfig& cfg);

/// Indices i with |G1_i| / max|G1| >= t and |G2_i| / max|G2| >= t, ascending.
/// Throws SelectionError if either head is all zeros.
std::vector<std::size_t> select_shared_features(const Vector& g1, const Vector& g2, double t_mtl);
std::vector<std::size_t> select_shared_features(const MtlModel& model, double t_mtl);

} // namespace dcid
