#include "dcid/scenario.hpp"

#include "dcid/error.hpp"
#include "dcid/linalg.hpp"
#include "dcid/regression.hpp"
#include "dcid/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace dcid {
namespace {

Matrix standard_normal(Index rows, Index cols, Rng& rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix m(rows, cols);
    // Row-major fill so the draw order does not depend on storage order.
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            m(i, j) = normal(rng);
        }
    }
    return m;
}

SignalMap draw_map(TargetMapKind kind, Index dim, Rng& rng, const Matrix& sample)
{
    SignalMap map;
    map.kind = kind;
    map.coefficients = standard_normal(dim, 1, rng).col(0);
    const Vector raw = map.raw(sample);
    map.shift = raw.mean();
    const double var = (raw.array() - map.shift).square().mean();
    if (!(var > 0.0)) {
        throw ValidationError("compose_targets: a target map has zero variance on the sample");
    }
    map.scale = std::sqrt(var);
    return map;
}

Matrix leaky_relu(Matrix m, double slope)
{
    return m.unaryExpr([slope](double v) { return v > 0.0 ? v : slope * v; });
}

Matrix expand_basis(const Matrix& latent, TargetMapKind kind)
{
    if (kind == TargetMapKind::linear) {
        return latent;
    }
    return hstack(latent, latent.array().square().matrix());
}

double safe_ratio(double numerator, double denominator)
{
    if (!(denominator > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return numerator / denominator;
}

} // namespace

std::string to_string(TargetMapKind kind)
{
    return kind == TargetMapKind::linear ? "linear" : "quadratic";
}

std::string to_string(ObsMapKind kind)
{
    return kind == ObsMapKind::linear ? "linear" : "mlp-random";
}

std::string to_string(Split split)
{
    switch (split) {
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test: return "test";
    }
    return "unknown";
}

TargetMapKind parse_target_map_kind(const std::string& text)
{
    if (text == "linear") return TargetMapKind::linear;
    if (text == "quadratic") return TargetMapKind::quadratic;
    throw ValidationError("unknown target map kind '" + text + "' (expected linear or quadratic)");
}

ObsMapKind parse_obs_map_kind(const std::string& text)
{
    if (text == "linear") return ObsMapKind::linear;
    if (text == "mlp-random") return ObsMapKind::mlp_random;
    throw ValidationError("unknown observation map kind '" + text + "' (expected linear or mlp-random)");
}

void ScenarioConfig::validate() const
{
    if (dim_shared < 1 || dim_indiv < 1 || dim_obs < 1) {
        throw ValidationError("scenario: dimensionalities must be at least 1");
    }
    if (n_samples < 10 * (dim_shared + 2 * dim_indiv)) {
        throw ValidationError("scenario: n_samples must be at least 10 x (dim_shared + 2 dim_indiv) = " +
                              std::to_string(10 * (dim_shared + 2 * dim_indiv)));
    }
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw ValidationError("scenario: tau must be positive and finite");
    }
    if (!(kappa > 0.0 && kappa <= 1.0)) {
        throw ValidationError("scenario: kappa must lie in (0, 1]");
    }
    if (!(noise_obs >= 0.0) || !std::isfinite(noise_obs)) {
        throw ValidationError("scenario: noise_obs must be a nonnegative real");
    }
    if (dim_obs < latent_dim()) {
        throw ValidationError("scenario: dim_obs = " + std::to_string(dim_obs) +
                              " is below dim_shared + 2 dim_indiv = " + std::to_string(latent_dim()) +
                              "; the latents would not be recoverable from x");
    }
    if (!(train_fraction > 0.0) || !(val_fraction >= 0.0) || !(train_fraction + val_fraction < 1.0)) {
        throw ValidationError("scenario: split fractions must satisfy train > 0, val >= 0, train + val < 1");
    }
}

Vector SignalMap::raw(const Matrix& latent) const
{
    if (latent.cols() != coefficients.size()) {
        throw ValidationError("signal map: expected " + std::to_string(coefficients.size()) + " latent columns");
    }
    if (kind == TargetMapKind::linear) {
        return latent * coefficients;
    }
    // Population-centred quadratic: E[z_j^2] = 1 for standard normal latents.
    return latent.array().square().matrix() * coefficients - Vector::Constant(latent.rows(), coefficients.sum());
}

ShareWeights solve_share_weights(double tau, double kappa)
{
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw ValidationError("tau must be positive and finite");
    }
    if (!(kappa > 0.0 && kappa <= 1.0)) {
        throw ValidationError("kappa must lie in (0, 1]");
    }
    // With unit-variance signals and a_i^2 + b_i^2 = 1, the shared fraction of
    // Var(y_i) is rho_i = a_i^2, so tau = (rho1 + rho2) / (2 - rho1 - rho2) and
    // kappa = rho1 / rho2.
    const double total = 2.0 * tau / (1.0 + tau);
    const double rho2 = total / (1.0 + kappa);
    const double rho1 = kappa * rho2;
    if (rho2 > 1.0 + 1e-12) {
        throw ValidationError("tau = " + std::to_string(tau) + " is unreachable for kappa = " +
                              std::to_string(kappa) + " (needs tau <= (1 + kappa) / (1 - kappa))");
    }
    const auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
    return ShareWeights{std::sqrt(clamp01(rho1)), std::sqrt(clamp01(rho2)), std::sqrt(clamp01(1.0 - rho1)),
                        std::sqrt(clamp01(1.0 - rho2))};
}

std::vector<std::size_t> GroundTruthDataset::rows_in(Split which) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < split.size(); ++i) {
        if (split[i] == which) {
            out.push_back(i);
        }
    }
    return out;
}

std::array<std::size_t, 3> GroundTruthDataset::split_counts() const
{
    std::array<std::size_t, 3> counts{};
    for (Split s : split) {
        ++counts[static_cast<std::size_t>(s)];
    }
    return counts;
}

void GroundTruthDataset::validate() const
{
    const Index n = x.rows();
    if (y1.size() != n || y2.size() != n || z.rows() != n || z1.rows() != n || z2.rows() != n ||
        static_cast<Index>(split.size()) != n) {
        throw ValidationError("dataset: members have mismatched row counts");
    }
    if (!x.allFinite() || !y1.allFinite() || !y2.allFinite() || !z.allFinite() || !z1.allFinite() ||
        !z2.allFinite()) {
        throw ValidationError("dataset: non-finite entries");
    }
}

Latents sample_latents(const ScenarioConfig& cfg)
{
    cfg.validate();
    Rng rz = make_rng(cfg.seed, "latent.z");
    Rng r1 = make_rng(cfg.seed, "latent.z1");
    Rng r2 = make_rng(cfg.seed, "latent.z2");
    return Latents{standard_normal(cfg.n_samples, cfg.dim_shared, rz),
                   standard_normal(cfg.n_samples, cfg.dim_indiv, r1),
                   standard_normal(cfg.n_samples, cfg.dim_indiv, r2)};
}

Targets compose_targets(const Latents& latents, const ScenarioConfig& cfg)
{
    return compose_targets(latents, cfg, solve_share_weights(cfg.tau, cfg.kappa));
}

Targets compose_targets(const Latents& latents, const ScenarioConfig& cfg, const ShareWeights& weights)
{
    Rng rng = make_rng(cfg.seed, "target.maps");
    Targets out;
    out.maps.psi1 = draw_map(cfg.target_map, latents.z.cols(), rng, latents.z);
    out.maps.psi2 = draw_map(cfg.target_map, latents.z.cols(), rng, latents.z);
    out.maps.phi1 = draw_map(cfg.target_map, latents.z1.cols(), rng, latents.z1);
    out.maps.phi2 = draw_map(cfg.target_map, latents.z2.cols(), rng, latents.z2);
    out.maps.weights = weights;
    out.y1 = weights.a1 * out.maps.psi1(latents.z) + weights.b1 * out.maps.phi1(latents.z1);
    out.y2 = weights.a2 * out.maps.psi2(latents.z) + weights.b2 * out.maps.phi2(latents.z2);
    return out;
}

Matrix mix_observations(const Latents& latents, const ScenarioConfig& cfg)
{
    cfg.validate();
    Matrix all(latents.z.rows(), latents.z.cols() + latents.z1.cols() + latents.z2.cols());
    all << latents.z, latents.z1, latents.z2;
    const Index m = all.cols();
    const Index l = cfg.dim_obs;
    if (l < m) {
        throw ValidationError("mix_observations: dim_obs smaller than the latent dimension");
    }

    Rng rng = make_rng(cfg.seed, "obs.map");
    const auto full_rank_draw = [&](Index rows, Index cols) {
        // Redraw in the (measure-zero) event of a badly conditioned map.
        for (int attempt = 0; attempt < 16; ++attempt) {
            Matrix w = standard_normal(rows, cols, rng) / std::sqrt(static_cast<double>(rows));
            const Vector s = linalg::jacobi_svd(w).singular_values;
            if (s(s.size() - 1) > 1e-3 * s(0)) {
                return w;
            }
        }
        throw ValidationError("mix_observations: could not draw a full-rank mixing map");
    };

    Matrix x;
    if (cfg.obs_map == ObsMapKind::linear) {
        x = all * full_rank_draw(m, l);
    } else {
        const Matrix w1 = full_rank_draw(m, l);
        const RowVector bias = 0.1 * standard_normal(1, l, rng);
        const Matrix w2 = full_rank_draw(l, l);
        x = leaky_relu((all * w1).rowwise() + bias, 0.2) * w2;
    }

    if (cfg.noise_obs > 0.0) {
        Rng noise = make_rng(cfg.seed, "obs.noise");
        x += cfg.noise_obs * standard_normal(x.rows(), x.cols(), noise);
    }
    return x;
}

std::vector<Split> assign_splits(Index n, double train_fraction, double val_fraction, std::uint64_t seed)
{
    const auto count = static_cast<std::size_t>(n);
    const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
    const auto n_val =
        std::min(count - n_train, static_cast<std::size_t>(std::llround(val_fraction * static_cast<double>(n))));

    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng = make_rng(seed, "split");
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<Split> split(count, Split::test);
    for (std::size_t i = 0; i < n_train; ++i) {
        split[order[i]] = Split::train;
    }
    for (std::size_t i = n_train; i < n_train + n_val; ++i) {
        split[order[i]] = Split::val;
    }
    return split;
}

GroundTruthDataset generate_dataset(const ScenarioConfig& cfg)
{
    cfg.validate();
    GroundTruthDataset ds;
    ds.config = cfg;
    Latents latents = sample_latents(cfg);
    Targets targets = compose_targets(latents, cfg);
    ds.x = mix_observations(latents, cfg);
    ds.y1 = std::move(targets.y1);
    ds.y2 = std::move(targets.y2);
    ds.maps = std::move(targets.maps);
    ds.z = std::move(latents.z);
    ds.z1 = std::move(latents.z1);
    ds.z2 = std::move(latents.z2);
    ds.split = assign_splits(cfg.n_samples, cfg.train_fraction, cfg.val_fraction, cfg.seed);
    return ds;
}

GroundTruthDataset with_ratios(const GroundTruthDataset& base, double tau, double kappa)
{
    GroundTruthDataset ds = base;
    ds.config.tau = tau;
    ds.config.kappa = kappa;
    ds.config.validate();
    const ShareWeights w = solve_share_weights(tau, kappa);
    ds.maps.weights = w;
    ds.y1 = w.a1 * ds.maps.psi1(ds.z) + w.b1 * ds.maps.phi1(ds.z1);
    ds.y2 = w.a2 * ds.maps.psi2(ds.z) + w.b2 * ds.maps.phi2(ds.z2);
    return ds;
}

GroundTruthDataset with_resplit(const GroundTruthDataset& base, std::uint64_t split_seed)
{
    GroundTruthDataset ds = base;
    ds.split = assign_splits(ds.rows(), ds.config.train_fraction, ds.config.val_fraction, split_seed);
    return ds;
}

RatioEstimate verify_ratios(const GroundTruthDataset& dataset)
{
    dataset.validate();
    const TargetMapKind kind = dataset.config.target_map;
    const Matrix shared = expand_basis(dataset.z, kind);
    const Matrix indiv = hstack(expand_basis(dataset.z1, kind), expand_basis(dataset.z2, kind));
    Matrix targets(dataset.rows(), 2);
    targets << dataset.y1, dataset.y2;

    RatioEstimate out;
    const ShareWeights& w = dataset.maps.weights;
    const double shared_r2 = r_squared(shared, targets);
    // Absent individual signal is an exact zero denominator, not a noisy estimate of one.
    if (w.b1 == 0.0 && w.b2 == 0.0) {
        out.tau_hat = std::numeric_limits<double>::infinity();
    } else {
        out.tau_hat = safe_ratio(shared_r2, r_squared(indiv, targets));
    }
    const double r2_y1 = r_squared(shared, dataset.y1);
    if (w.a2 == 0.0) {
        out.kappa_hat = std::numeric_limits<double>::infinity();
    } else {
        out.kappa_hat = safe_ratio(r2_y1, r_squared(shared, dataset.y2));
    }
    return out;
}

} // namespace dcid
