#pragma once

#include "dcid/dcid.hpp"
#include "dcid/icm.hpp"
#include "dcid/mtl.hpp"
#include "dcid/regression.hpp"
#include "dcid/scenario.hpp"
#include "dcid/serialization.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dcid {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kCsvSchemaVersion = 1;

enum class Method {
    dcid,
    mtl,
    oracle_z,    // z_hat := ground-truth z
    raw_features // z_hat := standardized b1 from the dcid fit, unrotated
};

std::string to_string(Method method);
Method parse_method(const std::string& text);

enum class SweepVariable { none, tau, kappa };

std::string to_string(SweepVariable variable);
SweepVariable parse_sweep_variable(const std::string& text);

struct MtlSettings {
    MlpSpec net;
    TrainConfig train;
    double t_mtl = 0.5;
};

/// One benchmark or sweep, fully determined by this value.
struct ExperimentConfig {
    ScenarioConfig scenario; // seed is replaced per scenario
    DcidConfig dcid;
    MtlSettings mtl;
    R2Options r2;
    std::vector<Method> methods{Method::dcid, Method::mtl, Method::oracle_z, Method::raw_features};
    Index scenarios = 10;
    Index seeds = 3;
    std::uint64_t master_seed = 0;
    std::size_t workers = 1;

    void validate() const;
};

struct SweepSpec {
    SweepVariable variable = SweepVariable::tau;
    std::vector<double> grid;

    void validate() const;
};

/// `points` values evenly spaced in log10 from lo to hi, both included.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

struct RunRecord {
    SweepVariable grid_variable = SweepVariable::none;
    double grid_value = 0.0;
    Index scenario = 0;
    Index seed = 0;
    Method method = Method::dcid;
    std::uint64_t dataset_seed = 0;
    std::uint64_t run_seed = 0;
    ScenarioConfig config; // echo, with the swept ratio applied
    std::optional<IcmScore> score; // empty when the run failed
    Index n_selected = 0;
    double duration_seconds = 0.0;
    std::string version = kVersion;
    std::string error;
};

/// 17 log-spaced tau values in [0.1, 10]; 9 log-spaced kappa values in [0.1, 1].
std::vector<double> default_grid(SweepVariable variable);

/// Seed of scenario `index` under `master`.
std::uint64_t scenario_seed(std::uint64_t master, Index index);
/// Seed of repetition `index` on a dataset; drives the resplit and all model seeds.
std::uint64_t run_seed(std::uint64_t dataset_seed, Index index);

/// Every (scenario, seed, method) run on the base ratios, canonically sorted.
/// A failing run becomes a record with an error message.
std::vector<RunRecord> run_benchmark(const ExperimentConfig& cfg);

/// As run_benchmark, once per grid value with the swept ratio substituted.
std::vector<RunRecord> run_sweep(const ExperimentConfig& cfg, const SweepSpec& sweep);

/// Orders by (grid value, scenario, seed, method).
void sort_records(std::vector<RunRecord>& records);

std::string results_csv(const std::vector<RunRecord>& records);
std::string summary_csv(const std::vector<RunRecord>& records);
std::string figure_csv(const std::vector<RunRecord>& records);
std::string timings_csv(const std::vector<RunRecord>& records);

/// Writes results.csv, summary.csv, timings.csv, metadata.json and, for a
/// sweep, fig_tau.csv or fig_kappa.csv. Only timings.csv depends on wall time.
void emit_plotdata(const std::vector<RunRecord>& records, const ExperimentConfig& cfg, const SweepSpec* sweep,
                   const std::filesystem::path& out_dir);

/// Mean and sample standard deviation over successful runs of one method at
/// one grid value.
struct MethodSummary {
    SweepVariable grid_variable = SweepVariable::none;
    double grid_value = 0.0;
    Method method = Method::dcid;
    Index runs = 0;
    Index failures = 0;
    double icm_mean = 0.0;
    double icm_std = 0.0;
    double informativeness_mean = 0.0;
    double compactness_mean = 0.0;
    double minimality_mean = 0.0;
    double leakage_mean = 0.0; // 1 - minimality
    double leakage_std = 0.0;
    double n_selected_mean = 0.0;
};

std::vector<MethodSummary> summarize(const std::vector<RunRecord>& records);

Json to_json(const ExperimentConfig& cfg);
/// Reads the "scenario", "dcid", "mtl", "r2" and "benchmark" sections; absent
/// keys keep the values in `base`.
ExperimentConfig experiment_config_from_json(const Json& j, ExperimentConfig base = {});
Json to_json(const SweepSpec& sweep);
/// Accepts either an explicit "grid" or "points" with "min" and "max"; with
/// neither, the grid is default_grid(variable).
SweepSpec sweep_spec_from_json(const Json& j, SweepSpec base = {});

} // namespace dcid
