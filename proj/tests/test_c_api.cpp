#include "dcid/dcid.h"

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const char* kSmall = R"({"n_samples": 2000, "dim_obs": 8, "seed": 4})";
const char* kLinear = R"({"dcid": {"representation": "linear", "threshold": 0.2}})";

} // namespace

TEST_CASE("c api: null arguments are validation errors")
{
    CHECK(dcid_dataset_generate(nullptr, nullptr) == DCID_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(dcid_last_error()) > 0);
    CHECK(dcid_fit(nullptr, "dcid", nullptr, nullptr) == DCID_ERR_INVALID_ARGUMENT);
    dcid_dataset* ds = nullptr;
    CHECK(dcid_dataset_generate(R"({"tau": "x"})", &ds) == DCID_ERR_INVALID_ARGUMENT);
    CHECK(ds == nullptr);
    CHECK(dcid_dataset_generate("{not json", &ds) == DCID_ERR_INVALID_ARGUMENT);
    CHECK(dcid_dataset_load("/nonexistent/dir", &ds) == DCID_ERR_IO);
    CHECK(std::string(dcid_status_name(DCID_ERR_EMPTY_ESTIMATE)) == "empty estimate");
    CHECK(std::string(dcid_version()) == "0.1.0");
    dcid_dataset_free(nullptr);
    dcid_model_free(nullptr);
    dcid_matrix_free(nullptr);
}

TEST_CASE("c api: generate, save, load, fit, predict")
{
    const fs::path dir = fs::temp_directory_path() / "dcid_test_capi";
    fs::remove_all(dir);

    dcid_dataset* ds = nullptr;
    REQUIRE(dcid_dataset_generate(kSmall, &ds) == DCID_OK);
    CHECK(std::strlen(dcid_last_error()) == 0);
    size_t rows = 0, dim_obs = 0, dim_shared = 0, dim_indiv = 0, test_rows = 0;
    REQUIRE(dcid_dataset_shape(ds, &rows, &dim_obs, &dim_shared, &dim_indiv) == DCID_OK);
    CHECK(rows == 2000);
    CHECK(dim_obs == 8);
    REQUIRE(dcid_dataset_test_rows(ds, &test_rows) == DCID_OK);
    CHECK(test_rows == 300);
    double tau_hat = 0.0, kappa_hat = 0.0;
    REQUIRE(dcid_dataset_verify_ratios(ds, &tau_hat, &kappa_hat) == DCID_OK);
    CHECK(tau_hat == doctest::Approx(1.0).epsilon(0.15));

    REQUIRE(dcid_dataset_save(ds, (dir / "ds").c_str()) == DCID_OK);
    dcid_dataset* loaded = nullptr;
    REQUIRE(dcid_dataset_load((dir / "ds").c_str(), &loaded) == DCID_OK);

    dcid_model* model = nullptr;
    CHECK(dcid_fit(ds, "svm", kLinear, &model) == DCID_ERR_INVALID_ARGUMENT);
    REQUIRE(dcid_fit(ds, "dcid", kLinear, &model) == DCID_OK);
    size_t n = 0;
    REQUIRE(dcid_model_n_components(model, &n) == DCID_OK);
    CHECK(n == 1);

    std::vector<double> x(3 * 8, 0.5);
    dcid_matrix out{};
    REQUIRE(dcid_model_predict(model, x.data(), 3, 8, &out) == DCID_OK);
    CHECK(out.rows == 3);
    CHECK(out.cols == 1);
    dcid_matrix bad{};
    CHECK(dcid_model_predict(model, x.data(), 3, 7, &bad) == DCID_ERR_INVALID_ARGUMENT);
    CHECK(bad.data == nullptr);

    REQUIRE(dcid_model_save(model, (dir / "model.json").c_str()) == DCID_OK);
    dcid_model* reloaded = nullptr;
    REQUIRE(dcid_model_load((dir / "model.json").c_str(), &reloaded) == DCID_OK);
    const char* method = nullptr;
    REQUIRE(dcid_model_method(reloaded, &method) == DCID_OK);
    CHECK(std::string(method) == "dcid");
    dcid_matrix again{};
    REQUIRE(dcid_model_predict(reloaded, x.data(), 3, 8, &again) == DCID_OK);
    CHECK(std::memcmp(out.data, again.data, 3 * sizeof(double)) == 0);

    dcid_matrix z_hat{};
    REQUIRE(dcid_model_estimate_test(model, loaded, &z_hat) == DCID_OK);
    CHECK(z_hat.rows == test_rows);
    dcid_icm_score score{};
    REQUIRE(dcid_score_icm(loaded, z_hat.data, z_hat.rows, z_hat.cols, &score) == DCID_OK);
    CHECK(score.icm >= 0.0);
    CHECK(score.icm <= 1.0);
    CHECK(score.n_components == 1);
    CHECK(dcid_score_icm(loaded, z_hat.data, z_hat.rows - 1, z_hat.cols, &score) == DCID_ERR_INVALID_ARGUMENT);

    dcid_surrogate_result sur{};
    dcid_matrix psi{};
    REQUIRE(dcid_surrogate(model, ds, &sur, &psi) == DCID_OK);
    CHECK(psi.rows == test_rows);
    CHECK(sur.test_rows == test_rows);

    dcid_model* mtl = nullptr;
    REQUIRE(dcid_fit(ds, "mtl", R"({"mtl": {"net": {"hidden_widths": [8], "feature_dim": 4},
                                             "train": {"epochs": 1}, "t_mtl": 0.0}})",
                     &mtl) == DCID_OK);
    REQUIRE(dcid_model_n_components(mtl, &n) == DCID_OK);
    CHECK(n == 4);
    CHECK(dcid_surrogate(mtl, ds, &sur, nullptr) == DCID_ERR_INVALID_ARGUMENT);

    dcid_matrix_free(&out);
    dcid_matrix_free(&again);
    dcid_matrix_free(&z_hat);
    dcid_matrix_free(&psi);
    CHECK(out.data == nullptr);
    dcid_model_free(mtl);
    dcid_model_free(reloaded);
    dcid_model_free(model);
    dcid_dataset_free(loaded);
    dcid_dataset_free(ds);
    fs::remove_all(dir);
}

TEST_CASE("c api: empty estimates")
{
    dcid_dataset* ds = nullptr;
    REQUIRE(dcid_dataset_generate(R"({"n_samples": 2000, "dim_obs": 8, "tau": 0.1, "seed": 3})", &ds) == DCID_OK);
    dcid_model* model = nullptr;
    REQUIRE(dcid_fit(ds, "dcid", R"({"dcid": {"representation": "linear"}})", &model) == DCID_OK);
    size_t n = 9;
    REQUIRE(dcid_model_n_components(model, &n) == DCID_OK);
    CHECK(n == 0);
    std::vector<double> x(8, 0.0);
    dcid_matrix out{};
    CHECK(dcid_model_predict(model, x.data(), 1, 8, &out) == DCID_ERR_EMPTY_ESTIMATE);
    dcid_matrix z_hat{};
    REQUIRE(dcid_model_estimate_test(model, ds, &z_hat) == DCID_OK);
    CHECK(z_hat.cols == 0);
    dcid_icm_score score{};
    REQUIRE(dcid_score_icm(ds, z_hat.data, z_hat.rows, 0, &score) == DCID_OK);
    CHECK(score.icm == 0.0);
    dcid_model_free(model);
    dcid_dataset_free(ds);
}

TEST_CASE("c api: benchmark writes the result files")
{
    const fs::path dir = fs::temp_directory_path() / "dcid_test_capi_bench";
    fs::remove_all(dir);
    const char* cfg = R"({"scenario": {"n_samples": 1000, "dim_obs": 8},
                          "benchmark": {"methods": ["oracle-z"], "scenarios": 2, "seeds": 1}})";
    REQUIRE(dcid_benchmark_run(cfg, dir.c_str(), 5, 1, -1.0) == DCID_OK);
    for (const char* name : {"results.csv", "summary.csv", "timings.csv", "metadata.json"}) {
        CHECK(fs::exists(dir / name));
    }
    CHECK(dcid_benchmark_run(R"({"benchmark": {"methods": []}})", dir.c_str(), 5, 1, -1.0) ==
          DCID_ERR_INVALID_ARGUMENT);
    CHECK(dcid_sweep_run(R"({"sweep": {"variable": "tau", "grid": [1.0]},
                             "scenario": {"n_samples": 1000, "dim_obs": 8},
                             "benchmark": {"methods": ["oracle-z"], "scenarios": 1, "seeds": 1}})",
                         dir.c_str(), -1, 0, -1.0) == DCID_OK);
    CHECK(fs::exists(dir / "fig_tau.csv"));
    fs::remove_all(dir);
}
