#include "dcid/serialization.hpp"

#include "dcid/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <initializer_list>
#include <iomanip>
#include <sstream>
#include <string_view>

namespace dcid {
namespace fs = std::filesystem;

namespace {

template <typename T>
void read_field(const Json& j, const char* key, T& out, const std::string& what)
{
    if (!j.contains(key)) {
        return;
    }
    try {
        out = j.at(key).get<T>();
    } catch (const Json::exception&) {
        throw ValidationError(what + ": field '" + key + "' has the wrong type");
    }
}

template <typename T>
T required(const Json& j, const char* key, const std::string& what)
{
    if (!j.is_object() || !j.contains(key)) {
        throw ValidationError(what + ": missing field '" + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception&) {
        throw ValidationError(what + ": field '" + key + "' has the wrong type");
    }
}

void check_schema(const Json& j, const std::string& kind)
{
    const int version = required<int>(j, "schema_version", kind);
    if (version != kSchemaVersion) {
        throw ValidationError(kind + ": unsupported schema_version " + std::to_string(version));
    }
    if (required<std::string>(j, "kind", kind) != kind) {
        throw ValidationError(kind + ": document kind is '" + j.at("kind").get<std::string>() + "'");
    }
}

Json signal_map_to_json(const SignalMap& m)
{
    return Json{{"kind", to_string(m.kind)},
                {"coefficients", vector_to_json(m.coefficients)},
                {"shift", m.shift},
                {"scale", m.scale}};
}

SignalMap signal_map_from_json(const Json& j, const std::string& what)
{
    SignalMap m;
    m.kind = parse_target_map_kind(required<std::string>(j, "kind", what));
    m.coefficients = vector_from_json(required<Json>(j, "coefficients", what), what + ".coefficients");
    m.shift = required<double>(j, "shift", what);
    m.scale = required<double>(j, "scale", what);
    return m;
}

Json feature_map_to_json(const FeatureMap& f)
{
    if (const auto* mlp = std::get_if<Mlp>(&f)) {
        return Json{{"type", "mlp"}, {"model", to_json(*mlp)}};
    }
    return Json{{"type", "ols"}, {"model", to_json(std::get<OlsModel>(f))}};
}

FeatureMap feature_map_from_json(const Json& j, const std::string& what)
{
    const auto type = required<std::string>(j, "type", what);
    if (type == "mlp") {
        return mlp_from_json(required<Json>(j, "model", what));
    }
    if (type == "ols") {
        return ols_model_from_json(required<Json>(j, "model", what));
    }
    throw ValidationError(what + ": unknown feature map type '" + type + "'");
}

Json scaling_to_json(const FeatureScaling& s)
{
    return Json{{"mean", vector_to_json(s.mean)}, {"inv_scale", vector_to_json(s.inv_scale)}};
}

FeatureScaling scaling_from_json(const Json& j, const std::string& what)
{
    FeatureScaling s;
    s.mean = vector_from_json(required<Json>(j, "mean", what), what + ".mean");
    s.inv_scale = vector_from_json(required<Json>(j, "inv_scale", what), what + ".inv_scale");
    if (s.mean.size() != s.inv_scale.size()) {
        throw ValidationError(what + ": mean and inv_scale lengths differ");
    }
    return s;
}

void put_f64(std::ostream& out, double value)
{
    auto bits = std::bit_cast<std::uint64_t>(value);
    if constexpr (std::endian::native == std::endian::big) {
        bits = __builtin_bswap64(bits);
    }
    char buf[8];
    std::memcpy(buf, &bits, 8);
    out.write(buf, 8);
}

double get_f64(const char* p)
{
    std::uint64_t bits = 0;
    std::memcpy(&bits, p, 8);
    if constexpr (std::endian::native == std::endian::big) {
        bits = __builtin_bswap64(bits);
    }
    return std::bit_cast<double>(bits);
}

void write_matrix_file(const fs::path& path, const Matrix& m)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            put_f64(out, m(i, j));
        }
    }
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

Matrix read_matrix_file(const fs::path& path, Index rows, Index cols)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto expected = static_cast<std::size_t>(rows * cols) * 8;
    if (bytes.size() != expected) {
        throw IoError(path.string() + ": expected " + std::to_string(expected) + " bytes, found " +
                      std::to_string(bytes.size()));
    }
    Matrix m(rows, cols);
    std::size_t offset = 0;
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            m(i, j) = get_f64(bytes.data() + offset);
            offset += 8;
        }
    }
    return m;
}

} // namespace

void require_known_keys(const Json& j, std::initializer_list<std::string_view> allowed, const std::string& what)
{
    if (!j.is_object()) {
        throw ValidationError(what + ": expected a JSON object");
    }
    for (const auto& item : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw ValidationError(what + ": unknown key '" + item.key() + "'");
        }
    }
}

Json matrix_to_json(const Matrix& m)
{
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

Matrix matrix_from_json(const Json& j, const std::string& what)
{
    const auto rows = required<Index>(j, "rows", what);
    const auto cols = required<Index>(j, "cols", what);
    const Json& data = required<Json>(j, "data", what);
    if (rows < 0 || cols < 0 || !data.is_array() || static_cast<Index>(data.size()) != rows) {
        throw ValidationError(what + ": malformed matrix");
    }
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const Json& row = data[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
            throw ValidationError(what + ": row " + std::to_string(i) + " has the wrong length");
        }
        for (Index c = 0; c < cols; ++c) {
            if (!row[static_cast<std::size_t>(c)].is_number()) {
                throw ValidationError(what + ": non-numeric entry");
            }
            m(i, c) = row[static_cast<std::size_t>(c)].get<double>();
        }
    }
    return m;
}

Json vector_to_json(const Vector& v)
{
    return Json(std::vector<double>(v.data(), v.data() + v.size()));
}

Vector vector_from_json(const Json& j, const std::string& what)
{
    if (!j.is_array()) {
        throw ValidationError(what + ": expected an array");
    }
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) {
            throw ValidationError(what + ": non-numeric entry");
        }
        v(static_cast<Index>(i)) = j[i].get<double>();
    }
    return v;
}

Json to_json(const ScenarioConfig& cfg)
{
    return Json{{"n_samples", cfg.n_samples},
                {"dim_shared", cfg.dim_shared},
                {"dim_indiv", cfg.dim_indiv},
                {"dim_obs", cfg.dim_obs},
                {"target_map", to_string(cfg.target_map)},
                {"obs_map", to_string(cfg.obs_map)},
                {"tau", cfg.tau},
                {"kappa", cfg.kappa},
                {"noise_obs", cfg.noise_obs},
                {"train_fraction", cfg.train_fraction},
                {"val_fraction", cfg.val_fraction},
                {"seed", cfg.seed}};
}

ScenarioConfig scenario_config_from_json(const Json& j, ScenarioConfig cfg)
{
    const std::string what = "scenario config";
    require_known_keys(j,
               {"n_samples", "dim_shared", "dim_indiv", "dim_obs", "target_map", "obs_map", "tau", "kappa",
                "noise_obs", "train_fraction", "val_fraction", "seed"},
               what);
    read_field(j, "n_samples", cfg.n_samples, what);
    read_field(j, "dim_shared", cfg.dim_shared, what);
    read_field(j, "dim_indiv", cfg.dim_indiv, what);
    read_field(j, "dim_obs", cfg.dim_obs, what);
    std::string text;
    if (j.contains("target_map")) {
        read_field(j, "target_map", text, what);
        cfg.target_map = parse_target_map_kind(text);
    }
    if (j.contains("obs_map")) {
        read_field(j, "obs_map", text, what);
        cfg.obs_map = parse_obs_map_kind(text);
    }
    read_field(j, "tau", cfg.tau, what);
    read_field(j, "kappa", cfg.kappa, what);
    read_field(j, "noise_obs", cfg.noise_obs, what);
    read_field(j, "train_fraction", cfg.train_fraction, what);
    read_field(j, "val_fraction", cfg.val_fraction, what);
    read_field(j, "seed", cfg.seed, what);
    return cfg;
}

Json to_json(const MlpSpec& spec)
{
    return Json{{"input_dim", spec.input_dim},       {"feature_dim", spec.feature_dim},
                {"hidden_widths", spec.hidden_widths}, {"activation", to_string(spec.activation)},
                {"output_dim", spec.output_dim},     {"seed", spec.seed}};
}

MlpSpec mlp_spec_from_json(const Json& j, MlpSpec spec)
{
    const std::string what = "mlp spec";
    require_known_keys(j, {"input_dim", "feature_dim", "hidden_widths", "activation", "output_dim", "seed"}, what);
    read_field(j, "input_dim", spec.input_dim, what);
    read_field(j, "feature_dim", spec.feature_dim, what);
    read_field(j, "hidden_widths", spec.hidden_widths, what);
    if (j.contains("activation")) {
        std::string text;
        read_field(j, "activation", text, what);
        spec.activation = parse_activation(text);
    }
    read_field(j, "output_dim", spec.output_dim, what);
    read_field(j, "seed", spec.seed, what);
    return spec;
}

Json to_json(const TrainConfig& cfg)
{
    return Json{{"learning_rate", cfg.learning_rate},
                {"batch_size", cfg.batch_size},
                {"epochs", cfg.epochs},
                {"optimizer", to_string(cfg.optimizer)},
                {"shuffle_seed", cfg.shuffle_seed}};
}

TrainConfig train_config_from_json(const Json& j, TrainConfig cfg)
{
    const std::string what = "train config";
    require_known_keys(j, {"learning_rate", "batch_size", "epochs", "optimizer", "shuffle_seed"}, what);
    read_field(j, "learning_rate", cfg.learning_rate, what);
    read_field(j, "batch_size", cfg.batch_size, what);
    read_field(j, "epochs", cfg.epochs, what);
    if (j.contains("optimizer")) {
        std::string text;
        read_field(j, "optimizer", text, what);
        cfg.optimizer = parse_optimizer(text);
    }
    read_field(j, "shuffle_seed", cfg.shuffle_seed, what);
    return cfg;
}

Json to_json(const DcidConfig& cfg)
{
    return Json{{"threshold", cfg.threshold},
                {"representation", to_string(cfg.representation)},
                {"net", to_json(cfg.net)},
                {"train", to_json(cfg.train)},
                {"concurrent_training", cfg.concurrent_training}};
}

DcidConfig dcid_config_from_json(const Json& j, DcidConfig cfg)
{
    const std::string what = "dcid config";
    require_known_keys(j, {"threshold", "representation", "net", "train", "concurrent_training"}, what);
    read_field(j, "threshold", cfg.threshold, what);
    if (j.contains("representation")) {
        std::string text;
        read_field(j, "representation", text, what);
        cfg.representation = parse_representation(text);
    }
    if (j.contains("net")) {
        cfg.net = mlp_spec_from_json(j.at("net"), cfg.net);
    }
    if (j.contains("train")) {
        cfg.train = train_config_from_json(j.at("train"), cfg.train);
    }
    read_field(j, "concurrent_training", cfg.concurrent_training, what);
    return cfg;
}

Json to_json(const R2Options& options)
{
    return Json{{"mode", options.mode == ProbeMode::held_out ? "held-out" : "in-sample"},
                {"probe_fraction", options.probe_fraction},
                {"seed", options.seed}};
}

R2Options r2_options_from_json(const Json& j, R2Options options)
{
    const std::string what = "r2 options";
    require_known_keys(j, {"mode", "probe_fraction", "seed"}, what);
    if (j.contains("mode")) {
        std::string text;
        read_field(j, "mode", text, what);
        if (text == "held-out") {
            options.mode = ProbeMode::held_out;
        } else if (text == "in-sample") {
            options.mode = ProbeMode::in_sample;
        } else {
            throw ValidationError("r2 options: mode must be held-out or in-sample");
        }
    }
    read_field(j, "probe_fraction", options.probe_fraction, what);
    read_field(j, "seed", options.seed, what);
    return options;
}

Json to_json(const TargetMaps& maps)
{
    return Json{{"psi1", signal_map_to_json(maps.psi1)},
                {"psi2", signal_map_to_json(maps.psi2)},
                {"phi1", signal_map_to_json(maps.phi1)},
                {"phi2", signal_map_to_json(maps.phi2)},
                {"weights",
                 {{"a1", maps.weights.a1}, {"a2", maps.weights.a2}, {"b1", maps.weights.b1}, {"b2", maps.weights.b2}}}};
}

TargetMaps target_maps_from_json(const Json& j)
{
    const std::string what = "target maps";
    TargetMaps maps;
    maps.psi1 = signal_map_from_json(required<Json>(j, "psi1", what), "psi1");
    maps.psi2 = signal_map_from_json(required<Json>(j, "psi2", what), "psi2");
    maps.phi1 = signal_map_from_json(required<Json>(j, "phi1", what), "phi1");
    maps.phi2 = signal_map_from_json(required<Json>(j, "phi2", what), "phi2");
    const Json& w = required<Json>(j, "weights", what);
    maps.weights = ShareWeights{required<double>(w, "a1", what), required<double>(w, "a2", what),
                                required<double>(w, "b1", what), required<double>(w, "b2", what)};
    return maps;
}

Json to_json(const IcmScore& score)
{
    return Json{{"informativeness", score.informativeness},
                {"compactness", score.compactness},
                {"minimality", score.minimality},
                {"icm", score.icm},
                {"n_components", score.n_components}};
}

Json to_json(const CcaModel& model)
{
    return Json{{"schema_version", kSchemaVersion},
                {"kind", "cca"},
                {"u", matrix_to_json(model.u)},
                {"v", matrix_to_json(model.v)},
                {"correlations", vector_to_json(model.correlations)},
                {"means_1", vector_to_json(model.means_1)},
                {"means_2", vector_to_json(model.means_2)}};
}

CcaModel cca_model_from_json(const Json& j)
{
    check_schema(j, "cca");
    CcaModel m;
    m.u = matrix_from_json(required<Json>(j, "u", "cca"), "cca.u");
    m.v = matrix_from_json(required<Json>(j, "v", "cca"), "cca.v");
    m.correlations = vector_from_json(required<Json>(j, "correlations", "cca"), "cca.correlations");
    m.means_1 = vector_from_json(required<Json>(j, "means_1", "cca"), "cca.means_1");
    m.means_2 = vector_from_json(required<Json>(j, "means_2", "cca"), "cca.means_2");
    const Index d = m.correlations.size();
    if (m.u.cols() != d || m.v.cols() != d || m.u.rows() != m.means_1.size() || m.v.rows() != m.means_2.size()) {
        throw ValidationError("cca: inconsistent dimensions");
    }
    return m;
}

Json to_json(const Mlp& net)
{
    Json layers = Json::array();
    for (const DenseLayer& layer : net.layers) {
        layers.push_back(Json{{"weights", matrix_to_json(layer.weights)}, {"bias", vector_to_json(layer.bias)}});
    }
    return Json{{"schema_version", kSchemaVersion},
                {"kind", "mlp"},
                {"spec", to_json(net.spec)},
                {"input_shift", vector_to_json(net.input_shift)},
                {"input_scale", vector_to_json(net.input_scale)},
                {"layers", std::move(layers)},
                {"head_weights", matrix_to_json(net.head_weights)},
                {"head_bias", vector_to_json(net.head_bias)}};
}

Mlp mlp_from_json(const Json& j)
{
    check_schema(j, "mlp");
    Mlp net;
    net.spec = mlp_spec_from_json(required<Json>(j, "spec", "mlp"));
    net.spec.validate();
    net.input_shift = vector_from_json(required<Json>(j, "input_shift", "mlp"), "mlp.input_shift");
    net.input_scale = vector_from_json(required<Json>(j, "input_scale", "mlp"), "mlp.input_scale");
    for (const Json& layer : required<Json>(j, "layers", "mlp")) {
        net.layers.push_back(DenseLayer{matrix_from_json(required<Json>(layer, "weights", "mlp layer"), "weights"),
                                        vector_from_json(required<Json>(layer, "bias", "mlp layer"), "bias")});
    }
    net.head_weights = matrix_from_json(required<Json>(j, "head_weights", "mlp"), "mlp.head_weights");
    net.head_bias = vector_from_json(required<Json>(j, "head_bias", "mlp"), "mlp.head_bias");

    // Shapes must chain from input_dim through every layer to the head.
    Index width = net.spec.input_dim;
    bool ok = net.input_shift.size() == width && net.input_scale.size() == width &&
              net.layers.size() == net.spec.hidden_widths.size() + 1;
    for (const DenseLayer& layer : net.layers) {
        ok = ok && layer.weights.rows() == width && layer.bias.size() == layer.weights.cols();
        width = layer.weights.cols();
    }
    ok = ok && width == net.spec.feature_dim && net.head_weights.rows() == width &&
         net.head_weights.cols() == net.spec.output_dim && net.head_bias.size() == net.spec.output_dim;
    if (!ok) {
        throw ValidationError("mlp: parameter shapes do not match its MlpSpec");
    }
    return net;
}

Json to_json(const OlsModel& model)
{
    return Json{{"schema_version", kSchemaVersion},
                {"kind", "ols"},
                {"weights", matrix_to_json(model.weights)},
                {"intercept", vector_to_json(model.intercept)},
                {"fitted_on", model.fitted_on}};
}

OlsModel ols_model_from_json(const Json& j)
{
    check_schema(j, "ols");
    OlsModel m;
    m.weights = matrix_from_json(required<Json>(j, "weights", "ols"), "ols.weights");
    m.intercept = vector_from_json(required<Json>(j, "intercept", "ols"), "ols.intercept");
    m.fitted_on = required<Index>(j, "fitted_on", "ols");
    if (m.weights.cols() != m.intercept.size()) {
        throw ValidationError("ols: inconsistent dimensions");
    }
    return m;
}

Json to_json(const SharedEstimate& est)
{
    return Json{{"schema_version", kSchemaVersion},
                {"kind", "dcid"},
                {"config", to_json(est.config)},
                {"f1", feature_map_to_json(est.f1)},
                {"f2", feature_map_to_json(est.f2)},
                {"scaling_1", scaling_to_json(est.scaling_1)},
                {"scaling_2", scaling_to_json(est.scaling_2)},
                {"cca", to_json(est.cca)},
                {"n_selected", est.n_selected},
                {"selected_correlations", vector_to_json(est.selected_correlations)}};
}

SharedEstimate shared_estimate_from_json(const Json& j)
{
    check_schema(j, "dcid");
    SharedEstimate est;
    est.config = dcid_config_from_json(required<Json>(j, "config", "dcid"));
    est.f1 = feature_map_from_json(required<Json>(j, "f1", "dcid"), "dcid.f1");
    est.f2 = feature_map_from_json(required<Json>(j, "f2", "dcid"), "dcid.f2");
    est.scaling_1 = scaling_from_json(required<Json>(j, "scaling_1", "dcid"), "dcid.scaling_1");
    est.scaling_2 = scaling_from_json(required<Json>(j, "scaling_2", "dcid"), "dcid.scaling_2");
    est.cca = cca_model_from_json(required<Json>(j, "cca", "dcid"));
    if (est.cca.u.rows() != est.scaling_1.mean.size() || est.cca.v.rows() != est.scaling_2.mean.size()) {
        throw ValidationError("dcid: feature widths do not match the CCA model");
    }
    select_components(est, required<Index>(j, "n_selected", "dcid"));
    return est;
}

Json to_json(const MtlModel& model, double t_mtl)
{
    Json selected = Json::array();
    try {
        for (std::size_t i : select_shared_features(model, t_mtl)) {
            selected.push_back(i);
        }
    } catch (const SelectionError&) {
        selected = nullptr;
    }
    return Json{{"schema_version", kSchemaVersion},
                {"kind", "mtl"},
                {"net", to_json(model.net)},
                {"t_mtl", t_mtl},
                {"selected", std::move(selected)}};
}

MtlModel mtl_model_from_json(const Json& j, double* t_mtl)
{
    check_schema(j, "mtl");
    MtlModel model;
    model.net = mlp_from_json(required<Json>(j, "net", "mtl"));
    if (model.net.spec.output_dim != 2) {
        throw ValidationError("mtl: the network must have two heads");
    }
    if (t_mtl != nullptr) {
        *t_mtl = required<double>(j, "t_mtl", "mtl");
    }
    return model;
}

Json read_json_file(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError(path.string() + ": invalid JSON (" + e.what() + ")");
    }
}

void write_json_file(const fs::path& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

void save_dataset(const GroundTruthDataset& dataset, const fs::path& dir)
{
    dataset.validate();
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    Matrix split(dataset.rows(), 1);
    for (Index i = 0; i < dataset.rows(); ++i) {
        split(i, 0) = static_cast<double>(static_cast<int>(dataset.split[static_cast<std::size_t>(i)]));
    }
    const std::vector<std::pair<std::string, Matrix>> members{
        {"x", dataset.x},   {"y1", Matrix(dataset.y1)}, {"y2", Matrix(dataset.y2)}, {"z", dataset.z},
        {"z1", dataset.z1}, {"z2", dataset.z2},          {"split", split}};

    Json matrices = Json::array();
    for (const auto& [name, m] : members) {
        const std::string file = name + ".bin";
        write_matrix_file(dir / file, m);
        matrices.push_back(Json{{"name", name}, {"file", file}, {"rows", m.rows()}, {"cols", m.cols()}});
    }
    const auto counts = dataset.split_counts();
    const Json manifest{{"schema_version", kSchemaVersion},
                        {"kind", "dataset"},
                        {"format", "float64 little-endian row-major"},
                        {"config", to_json(dataset.config)},
                        {"maps", to_json(dataset.maps)},
                        {"split_counts", {{"train", counts[0]}, {"val", counts[1]}, {"test", counts[2]}}},
                        {"matrices", std::move(matrices)}};
    write_json_file(dir / "manifest.json", manifest);
}

GroundTruthDataset load_dataset(const fs::path& dir)
{
    const Json manifest = read_json_file(dir / "manifest.json");
    check_schema(manifest, "dataset");
    GroundTruthDataset ds;
    ds.config = scenario_config_from_json(required<Json>(manifest, "config", "dataset"));
    ds.config.validate();
    ds.maps = target_maps_from_json(required<Json>(manifest, "maps", "dataset"));

    const auto load = [&](const std::string& name) {
        for (const Json& entry : required<Json>(manifest, "matrices", "dataset")) {
            if (required<std::string>(entry, "name", "dataset matrix") == name) {
                return read_matrix_file(dir / required<std::string>(entry, "file", name),
                                        required<Index>(entry, "rows", name), required<Index>(entry, "cols", name));
            }
        }
        throw ValidationError("dataset: manifest lists no matrix '" + name + "'");
    };
    ds.x = load("x");
    const Matrix y1 = load("y1");
    const Matrix y2 = load("y2");
    if (y1.cols() != 1 || y2.cols() != 1) {
        throw ValidationError("dataset: targets must be single columns");
    }
    ds.y1 = y1.col(0);
    ds.y2 = y2.col(0);
    ds.z = load("z");
    ds.z1 = load("z1");
    ds.z2 = load("z2");
    const Matrix split = load("split");
    ds.split.reserve(static_cast<std::size_t>(split.rows()));
    for (Index i = 0; i < split.rows(); ++i) {
        const double v = split(i, 0);
        if (v != 0.0 && v != 1.0 && v != 2.0) {
            throw ValidationError("dataset: split labels must be 0, 1 or 2");
        }
        ds.split.push_back(static_cast<Split>(static_cast<int>(v)));
    }
    ds.validate();
    return ds;
}

void export_csv(const GroundTruthDataset& dataset, const fs::path& path)
{
    dataset.validate();
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "split";
    for (Index j = 0; j < dataset.x.cols(); ++j) out << ",x_" << j;
    out << ",y1,y2";
    for (Index j = 0; j < dataset.z.cols(); ++j) out << ",z_" << j;
    for (Index j = 0; j < dataset.z1.cols(); ++j) out << ",z1_" << j;
    for (Index j = 0; j < dataset.z2.cols(); ++j) out << ",z2_" << j;
    out << '\n' << std::setprecision(17);
    for (Index i = 0; i < dataset.rows(); ++i) {
        out << to_string(dataset.split[static_cast<std::size_t>(i)]);
        for (Index j = 0; j < dataset.x.cols(); ++j) out << ',' << dataset.x(i, j);
        out << ',' << dataset.y1(i) << ',' << dataset.y2(i);
        for (Index j = 0; j < dataset.z.cols(); ++j) out << ',' << dataset.z(i, j);
        for (Index j = 0; j < dataset.z1.cols(); ++j) out << ',' << dataset.z1(i, j);
        for (Index j = 0; j < dataset.z2.cols(); ++j) out << ',' << dataset.z2(i, j);
        out << '\n';
    }
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

} // namespace dcid
