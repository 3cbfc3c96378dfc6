#include "dcid/error.hpp"
#include "dcid/serialization.hpp"

#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dcid;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("dcid_test_" + name))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

GroundTruthDataset small_dataset(std::uint64_t seed)
{
    ScenarioConfig cfg;
    cfg.n_samples = 1500;
    cfg.dim_obs = 6;
    cfg.dim_shared = 2;
    cfg.target_map = TargetMapKind::quadratic;
    cfg.seed = seed;
    return generate_dataset(cfg);
}

} // namespace

TEST_CASE("matrices survive JSON exactly")
{
    const Matrix m = test::normal_matrix(4, 3, 1);
    const Json j = matrix_to_json(m);
    CHECK(matrix_from_json(Json::parse(j.dump()), "m") == m);
    CHECK(matrix_from_json(matrix_to_json(Matrix(0, 3)), "m").cols() == 3);
    Json bad = j;
    bad["data"][1].erase(0);
    CHECK_THROWS_AS(matrix_from_json(bad, "m"), ValidationError);
    CHECK_THROWS_AS(vector_from_json(Json{1.0, "x"}, "v"), ValidationError);
}

TEST_CASE("config parsers fill defaults and reject unknown keys")
{
    const ScenarioConfig sc = scenario_config_from_json(Json{{"tau", 2.0}, {"target_map", "quadratic"}});
    CHECK(sc.tau == 2.0);
    CHECK(sc.target_map == TargetMapKind::quadratic);
    CHECK(sc.n_samples == ScenarioConfig{}.n_samples);
    CHECK_THROWS_AS(scenario_config_from_json(Json{{"taux", 2.0}}), ValidationError);
    CHECK_THROWS_AS(scenario_config_from_json(Json{{"tau", "two"}}), ValidationError);
    CHECK_THROWS_AS(dcid_config_from_json(Json{{"net", {{"depth", 3}}}}), ValidationError);

    DcidConfig d;
    d.threshold = 0.3;
    d.representation = Representation::linear;
    d.net.hidden_widths = {8, 4};
    d.train.optimizer = Optimizer::sgd;
    const DcidConfig back = dcid_config_from_json(to_json(d));
    CHECK(back.threshold == 0.3);
    CHECK(back.representation == Representation::linear);
    CHECK(back.net.hidden_widths == std::vector<Index>{8, 4});
    CHECK(back.train.optimizer == Optimizer::sgd);

    R2Options r;
    r.mode = ProbeMode::in_sample;
    CHECK(r2_options_from_json(to_json(r)).mode == ProbeMode::in_sample);
}

TEST_CASE("networks round-trip with identical outputs")
{
    MlpSpec spec;
    spec.input_dim = 5;
    spec.hidden_widths = {7};
    spec.feature_dim = 4;
    spec.output_dim = 2;
    spec.seed = 3;
    Mlp net = init_mlp(spec);
    net.fit_input_scaling(test::normal_matrix(50, 5, 2));
    const Mlp back = mlp_from_json(Json::parse(to_json(net).dump()));
    const Matrix x = test::normal_matrix(20, 5, 4);
    CHECK(back.forward(x) == net.forward(x));

    Json broken = to_json(net);
    broken["spec"]["feature_dim"] = 5;
    CHECK_THROWS_AS(mlp_from_json(broken), ValidationError);
    Json wrong_version = to_json(net);
    wrong_version["schema_version"] = 99;
    CHECK_THROWS_AS(mlp_from_json(wrong_version), ValidationError);
    Json wrong_kind = to_json(net);
    wrong_kind["kind"] = "ols";
    CHECK_THROWS_AS(mlp_from_json(wrong_kind), ValidationError);
}

TEST_CASE("shared estimates round-trip with identical predictions")
{
    const GroundTruthDataset ds = small_dataset(5);
    DcidConfig cfg;
    cfg.net.hidden_widths = {8};
    cfg.net.feature_dim = 4;
    cfg.train.epochs = 2;
    cfg.threshold = 0.1;
    const SharedEstimate est = fit_dcid(ds, cfg);
    REQUIRE(est.n_selected > 0);
    const SharedEstimate back = shared_estimate_from_json(Json::parse(to_json(est).dump()));
    CHECK(back.n_selected == est.n_selected);
    CHECK(predict_shared(back, ds.x) == predict_shared(est, ds.x));

    cfg.representation = Representation::linear;
    const SharedEstimate lin = fit_dcid(ds, cfg);
    const SharedEstimate lin_back = shared_estimate_from_json(to_json(lin));
    CHECK(lin_back.cca.correlations == lin.cca.correlations);
    CHECK(std::holds_alternative<OlsModel>(lin_back.f1));
}

TEST_CASE("mtl models keep their selection threshold")
{
    const GroundTruthDataset ds = small_dataset(6);
    MlpSpec spec;
    spec.hidden_widths = {8};
    spec.feature_dim = 4;
    TrainConfig cfg;
    cfg.epochs = 1;
    const MtlModel model = train_mtl(ds, spec, cfg);
    double t = 0.0;
    const MtlModel back = mtl_model_from_json(to_json(model, 0.25), &t);
    CHECK(t == 0.25);
    CHECK(back.net.head_weights == model.net.head_weights);
    CHECK(select_shared_features(back, t) == select_shared_features(model, 0.25));
}

TEST_CASE("datasets round-trip bit for bit")
{
    TempDir dir("dataset");
    const GroundTruthDataset ds = small_dataset(7);
    save_dataset(ds, dir.path);
    CHECK(fs::file_size(dir.path / "x.bin") == static_cast<std::uintmax_t>(ds.x.size() * 8));
    const GroundTruthDataset back = load_dataset(dir.path);
    CHECK(back.x == ds.x);
    CHECK(back.y1 == ds.y1);
    CHECK(back.y2 == ds.y2);
    CHECK(back.z == ds.z);
    CHECK(back.z1 == ds.z1);
    CHECK(back.z2 == ds.z2);
    CHECK(back.split == ds.split);
    CHECK(back.config.seed == ds.config.seed);
    CHECK(back.maps.psi1.coefficients == ds.maps.psi1.coefficients);
    CHECK(back.maps.weights.a1 == ds.maps.weights.a1);

    // The first float64 of x.bin is x(0, 0), little-endian.
    std::ifstream in(dir.path / "x.bin", std::ios::binary);
    unsigned char bytes[8];
    in.read(reinterpret_cast<char*>(bytes), 8);
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) bits = (bits << 8) | bytes[i];
    CHECK(std::bit_cast<double>(bits) == ds.x(0, 0));

    fs::resize_file(dir.path / "y1.bin", 16);
    CHECK_THROWS_AS(load_dataset(dir.path), IoError);
    CHECK_THROWS_AS(load_dataset(dir.path / "missing"), IoError);
}

TEST_CASE("csv export header and row count")
{
    TempDir dir("csv");
    const GroundTruthDataset ds = small_dataset(8);
    export_csv(ds, dir.path / "d.csv");
    std::ifstream in(dir.path / "d.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "split,x_0,x_1,x_2,x_3,x_4,x_5,y1,y2,z_0,z_1,z1_0,z2_0");
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind(to_string(ds.split[0]) + ",", 0) == 0);
    Index rows = 1;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == ds.rows());
}

TEST_CASE("json files report missing and malformed input")
{
    TempDir dir("json");
    CHECK_THROWS_AS(read_json_file(dir.path / "none.json"), IoError);
    std::ofstream(dir.path / "bad.json") << "{ not json";
    CHECK_THROWS_AS(read_json_file(dir.path / "bad.json"), ValidationError);
    write_json_file(dir.path / "ok.json", Json{{"a", 1}});
    CHECK(read_json_file(dir.path / "ok.json")["a"] == 1);
}
