#pragma once

#include "dcid/types.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dcid {

enum class TargetMapKind { linear, quadratic };
enum class ObsMapKind { linear, mlp_random };
enum class Split : std::uint8_t { train = 0, val = 1, test = 2 };

std::string to_string(TargetMapKind kind);
std::string to_string(ObsMapKind kind);
std::string to_string(Split split);
TargetMapKind parse_target_map_kind(const std::string& text);
ObsMapKind parse_obs_map_kind(const std::string& text);

/// Everything needed to regenerate a synthetic dataset bit-for-bit.
struct ScenarioConfig {
    Index n_samples = 10000;
    Index dim_shared = 1;
    Index dim_indiv = 1;
    Index dim_obs = 32;
    TargetMapKind target_map = TargetMapKind::linear;
    ObsMapKind obs_map = ObsMapKind::linear;
    double tau = 1.0;   // shared-to-individual explained-variance ratio
    double kappa = 1.0; // Y1-to-Y2 shared explained-variance ratio
    double noise_obs = 0.05;
    double train_fraction = 0.70;
    double val_fraction = 0.15;
    std::uint64_t seed = 0;

    /// Throws ValidationError naming the first violated constraint.
    void validate() const;

    Index latent_dim() const { return dim_shared + 2 * dim_indiv; }
};

struct Latents {
    Matrix z;  // N x dim_shared
    Matrix z1; // N x dim_indiv
    Matrix z2; // N x dim_indiv
};

/// One of the scalar maps psi_i or phi_i, returning a unit-variance signal.
struct SignalMap {
    TargetMapKind kind = TargetMapKind::linear;
    Vector coefficients;
    double shift = 0.0; // sample mean of the raw map on the generating sample
    double scale = 1.0; // sample standard deviation of the raw map

    Vector raw(const Matrix& latent) const;
    Vector operator()(const Matrix& latent) const { return (raw(latent).array() - shift) / scale; }
};

/// Mixing weights for y_i = a_i * psi_i(z) + b_i * phi_i(z_i).
struct ShareWeights {
    double a1 = 0.0;
    double a2 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
};

struct TargetMaps {
    SignalMap psi1;
    SignalMap psi2;
    SignalMap phi1;
    SignalMap phi2;
    ShareWeights weights;
};

/// Weights that realize the requested (tau, kappa) with unit-variance targets.
/// Combinations outside the reachable region, tau > (1 + kappa) / (1 - kappa),
/// throw ValidationError.
ShareWeights solve_share_weights(double tau, double kappa);

struct GroundTruthDataset {
    ScenarioConfig config;
    Matrix x;
    Vector y1;
    Vector y2;
    Matrix z;
    Matrix z1;
    Matrix z2;
    std::vector<Split> split;
    TargetMaps maps;

    Index rows() const { return x.rows(); }
    std::vector<std::size_t> rows_in(Split which) const;
    std::array<std::size_t, 3> split_counts() const;

    /// Checks row alignment and finiteness of every member.
    void validate() const;
};

/// Draws z, z1, z2 with i.i.d. standard normal entries, each from its own
/// stream derived from cfg.seed.
Latents sample_latents(const ScenarioConfig& cfg);

struct Targets {
    Vector y1;
    Vector y2;
    TargetMaps maps;
};

/// Builds y1, y2 with weights solved from cfg.tau and cfg.kappa.
Targets compose_targets(const Latents& latents, const ScenarioConfig& cfg);

/// Same maps as compose_targets draws for cfg.seed, explicit mixing weights.
Targets compose_targets(const Latents& latents, const ScenarioConfig& cfg, const ShareWeights& weights);

/// x = M([z | z1 | z2]) + noise, with M a random full-column-rank linear map or
/// a fixed random one-hidden-layer leaky-ReLU network.
Matrix mix_observations(const Latents& latents, const ScenarioConfig& cfg);

/// Seeded train/val/test assignment with counts round(N * fraction).
std::vector<Split> assign_splits(Index n, double train_fraction, double val_fraction, std::uint64_t seed);

GroundTruthDataset generate_dataset(const ScenarioConfig& cfg);

/// Copy of `base` with targets recomposed for a new (tau, kappa); latents,
/// observations, map coefficients and splits are kept.
GroundTruthDataset with_ratios(const GroundTruthDataset& base, double tau, double kappa);

/// Copy of `base` with a fresh split assignment drawn from `split_seed`.
GroundTruthDataset with_resplit(const GroundTruthDataset& base, std::uint64_t split_seed);

struct RatioEstimate {
    double tau_hat = 0.0;
    double kappa_hat = 0.0;
};

/// Re-measures tau and kappa from the sample with linear R^2 probes on the
/// latents (expanded with squares for quadratic target maps). A vanishing
/// denominator is reported as +infinity.
RatioEstimate verify_ratios(const GroundTruthDataset& dataset);

} // namespace dcid
