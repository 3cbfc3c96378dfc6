#pragma once

#include "dcid/cca.hpp"
#include "dcid/dcid.hpp"
#include "dcid/icm.hpp"
#include "dcid/mtl.hpp"
#include "dcid/nets.hpp"
#include "dcid/regression.hpp"
#include "dcid/scenario.hpp"

#include <json.hpp>

#include <filesystem>
#include <initializer_list>
#include <string_view>
#include <string>

namespace dcid {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Matrices are nested row arrays; vectors are flat arrays.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& what);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j, const std::string& what);

// Config parsers reject unknown keys; missing keys keep their defaults.
Json to_json(const ScenarioConfig& cfg);
ScenarioConfig scenario_config_from_json(const Json& j, ScenarioConfig base = {});
Json to_json(const MlpSpec& spec);
MlpSpec mlp_spec_from_json(const Json& j, MlpSpec base = {});
Json to_json(const TrainConfig& cfg);
TrainConfig train_config_from_json(const Json& j, TrainConfig base = {});
Json to_json(const DcidConfig& cfg);
DcidConfig dcid_config_from_json(const Json& j, DcidConfig base = {});
Json to_json(const R2Options& options);
R2Options r2_options_from_json(const Json& j, R2Options base = {});

Json to_json(const TargetMaps& maps);
TargetMaps target_maps_from_json(const Json& j);
Json to_json(const IcmScore& score);

Json to_json(const CcaModel& model);
CcaModel cca_model_from_json(const Json& j);
Json to_json(const Mlp& net);
Mlp mlp_from_json(const Json& j);
Json to_json(const OlsModel& model);
OlsModel ols_model_from_json(const Json& j);
Json to_json(const SharedEstimate& est);
SharedEstimate shared_estimate_from_json(const Json& j);
Json to_json(const MtlModel& model, double t_mtl);
MtlModel mtl_model_from_json(const Json& j, double* t_mtl = nullptr);

/// Throws ValidationError if `j` is not an object or has a key outside `allowed`.
void require_known_keys(const Json& j, std::initializer_list<std::string_view> allowed, const std::string& what);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

/// Writes manifest.json plus one little-endian row-major float64 file per
/// matrix (split labels stored as 0, 1, 2).
void save_dataset(const GroundTruthDataset& dataset, const std::filesystem::path& dir);
GroundTruthDataset load_dataset(const std::filesystem::path& dir);

/// One row per sample: split, x_*, y1, y2, z_*, z1_*, z2_*.
void export_csv(const GroundTruthDataset& dataset, const std::filesystem::path& path);

} // namespace dcid
