// Command-line driver over the C API.
#include "dcid/dcid.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Failure {
    int code;
    std::string message;
};

void check(dcid_status status, const std::string& context)
{
    if (status == DCID_OK) return;
    const int code = status == DCID_ERR_INVALID_ARGUMENT ? kExitValidation : kExitRuntime;
    throw Failure{code, context + ": " + dcid_status_name(status) + ": " + dcid_last_error()};
}

Json read_config(const std::string& path)
{
    if (path.empty()) return Json::object();
    std::ifstream in(path);
    if (!in) throw Failure{kExitValidation, "cannot open config " + path};
    try {
        Json j = Json::parse(in);
        if (!j.is_object()) throw Failure{kExitValidation, path + ": config must be a JSON object"};
        return j;
    } catch (const Json::parse_error& e) {
        throw Failure{kExitValidation, path + ": " + e.what()};
    }
}

struct Dataset {
    dcid_dataset* handle = nullptr;
    ~Dataset() { dcid_dataset_free(handle); }
};

struct Model {
    dcid_model* handle = nullptr;
    ~Model() { dcid_model_free(handle); }
};

struct Buffer {
    dcid_matrix m{nullptr, 0, 0};
    ~Buffer() { dcid_matrix_free(&m); }
};

void make_dir(const std::string& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Failure{kExitRuntime, "cannot create " + dir + ": " + ec.message()};
}

void write_matrix_csv(const fs::path& path, const dcid_matrix& m, const std::string& prefix)
{
    std::ofstream out(path);
    if (!out) throw Failure{kExitRuntime, "cannot write " + path.string()};
    for (size_t j = 0; j < m.cols; ++j) out << (j ? "," : "") << prefix << j;
    out << '\n';
    out.precision(17);
    for (size_t i = 0; i < m.rows; ++i) {
        for (size_t j = 0; j < m.cols; ++j) out << (j ? "," : "") << m.data[i * m.cols + j];
        out << '\n';
    }
}

std::vector<double> read_matrix_csv(const std::string& path, size_t& rows, size_t& cols)
{
    std::ifstream in(path);
    if (!in) throw Failure{kExitValidation, "cannot open estimate " + path};
    std::string line;
    std::getline(in, line);
    cols = line.empty() ? 0 : static_cast<size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    std::vector<double> data;
    rows = 0;
    while (std::getline(in, line)) {
        if (cols == 0) {
            ++rows;
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        size_t n = 0;
        while (std::getline(ss, cell, ',')) {
            try {
                data.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw Failure{kExitValidation, path + ": bad number '" + cell + "' on row " + std::to_string(rows)};
            }
            ++n;
        }
        if (n != cols) throw Failure{kExitValidation, path + ": row " + std::to_string(rows) + " has " +
                                                          std::to_string(n) + " fields, expected " + std::to_string(cols)};
        ++rows;
    }
    return data;
}

Json score_json(const dcid_icm_score& s)
{
    return Json{{"informativeness", s.informativeness},
                {"compactness", s.compactness},
                {"minimality", s.minimality},
                {"icm", s.icm},
                {"n_components", s.n_components}};
}

void write_json(const fs::path& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) throw Failure{kExitRuntime, "cannot write " + path.string()};
    out << j.dump(2) << '\n';
}

// --seed on fit/surrogate reseeds every network and shuffle stream.
void apply_model_overrides(Json& cfg, long long seed, double threshold)
{
    if (seed >= 0) {
        for (const char* section : {"dcid", "mtl"}) {
            cfg[section]["net"]["seed"] = seed;
            cfg[section]["train"]["shuffle_seed"] = seed;
        }
    }
    if (threshold >= 0.0) cfg["dcid"]["threshold"] = threshold;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Shared-signal recovery between two targets (DCID), ICM scoring and synthetic benchmarks"};
    app.set_version_flag("--version", std::string(dcid_version()));
    app.require_subcommand(1);

    std::string config_path;
    long long seed = -1;
    std::string out_dir = ".";
    std::size_t workers = 0;
    double threshold = -1.0;
    std::string dataset_dir;
    std::string method = "dcid";
    std::string model_path;
    std::string estimate_path;
    std::string variable;
    bool csv = false;

    const auto common = [&](CLI::App* sub, bool with_workers) {
        sub->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "Master seed override")->check(CLI::NonNegativeNumber);
        sub->add_option("--out-dir", out_dir, "Output directory");
        sub->add_option("--threshold", threshold, "DCID correlation threshold T in [0, 1)");
        if (with_workers) sub->add_option("--workers", workers, "Concurrent runs")->check(CLI::PositiveNumber);
    };

    CLI::App* generate = app.add_subcommand("generate", "Generate a synthetic dataset and save it");
    common(generate, false);
    generate->add_flag("--csv", csv, "Also write dataset.csv");

    CLI::App* fit = app.add_subcommand("fit", "Fit one method on one dataset");
    common(fit, false);
    fit->add_option("--dataset", dataset_dir, "Dataset directory")->required();
    fit->add_option("--method", method, "dcid or mtl")->check(CLI::IsMember({"dcid", "mtl"}));

    CLI::App* icm = app.add_subcommand("icm", "Score a saved estimate on a dataset's test rows");
    common(icm, false);
    icm->add_option("--dataset", dataset_dir, "Dataset directory")->required();
    auto* est_opt = icm->add_option("--estimate", estimate_path, "CSV of z_hat on the test rows");
    auto* model_opt = icm->add_option("--model", model_path, "Saved model to evaluate instead");
    est_opt->excludes(model_opt);

    CLI::App* benchmark = app.add_subcommand("benchmark", "Run the benchmark table");
    common(benchmark, true);

    CLI::App* sweep = app.add_subcommand("sweep", "Sweep tau or kappa");
    common(sweep, true);
    sweep->add_option("--variable", variable, "tau or kappa")->check(CLI::IsMember({"tau", "kappa"}));

    CLI::App* surrogate = app.add_subcommand("surrogate", "Reconstruct the shared part of y1");
    common(surrogate, false);
    surrogate->add_option("--dataset", dataset_dir, "Dataset directory")->required();
    surrogate->add_option("--model", model_path, "Saved dcid model; fitted afresh when omitted");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitValidation;
    }

    try {
        Json cfg = read_config(config_path);
        if (generate->parsed()) {
            Json scenario = cfg.contains("scenario") ? cfg["scenario"] : Json::object();
            if (seed >= 0) scenario["seed"] = seed;
            Dataset ds;
            check(dcid_dataset_generate(scenario.dump().c_str(), &ds.handle), "generate");
            check(dcid_dataset_save(ds.handle, out_dir.c_str()), "save");
            if (csv) check(dcid_dataset_export_csv(ds.handle, (fs::path(out_dir) / "dataset.csv").c_str()), "csv");
            double tau_hat = 0.0;
            double kappa_hat = 0.0;
            check(dcid_dataset_verify_ratios(ds.handle, &tau_hat, &kappa_hat), "verify");
            std::cout << Json{{"out_dir", out_dir}, {"tau_hat", tau_hat}, {"kappa_hat", kappa_hat}}.dump() << '\n';
        } else if (fit->parsed()) {
            apply_model_overrides(cfg, seed, threshold);
            Dataset ds;
            check(dcid_dataset_load(dataset_dir.c_str(), &ds.handle), "load");
            Model model;
            check(dcid_fit(ds.handle, method.c_str(), cfg.dump().c_str(), &model.handle), "fit");
            make_dir(out_dir);
            check(dcid_model_save(model.handle, (fs::path(out_dir) / "model.json").c_str()), "save");
            Buffer z_hat;
            check(dcid_model_estimate_test(model.handle, ds.handle, &z_hat.m), "estimate");
            write_matrix_csv(fs::path(out_dir) / "zhat_test.csv", z_hat.m, "zhat_");
            dcid_icm_score score{};
            check(dcid_score_icm(ds.handle, z_hat.m.data, z_hat.m.rows, z_hat.m.cols, &score), "icm");
            const Json result = score_json(score);
            write_json(fs::path(out_dir) / "score.json", result);
            std::cout << result.dump() << '\n';
        } else if (icm->parsed()) {
            if (estimate_path.empty() && model_path.empty()) {
                throw Failure{kExitValidation, "icm: give --estimate or --model"};
            }
            Dataset ds;
            check(dcid_dataset_load(dataset_dir.c_str(), &ds.handle), "load");
            dcid_icm_score score{};
            if (!model_path.empty()) {
                Model model;
                check(dcid_model_load(model_path.c_str(), &model.handle), "load model");
                Buffer z_hat;
                check(dcid_model_estimate_test(model.handle, ds.handle, &z_hat.m), "estimate");
                check(dcid_score_icm(ds.handle, z_hat.m.data, z_hat.m.rows, z_hat.m.cols, &score), "icm");
            } else {
                size_t rows = 0;
                size_t cols = 0;
                const std::vector<double> data = read_matrix_csv(estimate_path, rows, cols);
                check(dcid_score_icm(ds.handle, data.data(), rows, cols, &score), "icm");
            }
            std::cout << score_json(score).dump() << '\n';
        } else if (benchmark->parsed() || sweep->parsed()) {
            if (!variable.empty()) cfg["sweep"]["variable"] = variable;
            const std::string text = cfg.dump();
            if (benchmark->parsed()) {
                check(dcid_benchmark_run(text.c_str(), out_dir.c_str(), seed, workers, threshold), "benchmark");
            } else {
                check(dcid_sweep_run(text.c_str(), out_dir.c_str(), seed, workers, threshold), "sweep");
            }
            std::cout << Json{{"out_dir", out_dir}}.dump() << '\n';
        } else if (surrogate->parsed()) {
            apply_model_overrides(cfg, seed, threshold);
            Dataset ds;
            check(dcid_dataset_load(dataset_dir.c_str(), &ds.handle), "load");
            Model model;
            if (model_path.empty()) {
                check(dcid_fit(ds.handle, "dcid", cfg.dump().c_str(), &model.handle), "fit");
            } else {
                check(dcid_model_load(model_path.c_str(), &model.handle), "load model");
            }
            dcid_surrogate_result r{};
            Buffer psi;
            check(dcid_surrogate(model.handle, ds.handle, &r, &psi.m), "surrogate");
            make_dir(out_dir);
            write_matrix_csv(fs::path(out_dir) / "psi1_hat_test.csv", psi.m, "psi1_hat_");
            const Json result{{"r2_y1", r.r2_y1},
                              {"r2_y2", r.r2_y2},
                              {"corr_psi1_y2", r.corr_psi1_y2},
                              {"corr_y1_y2", r.corr_y1_y2},
                              {"test_rows", r.test_rows}};
            write_json(fs::path(out_dir) / "surrogate.json", result);
            std::cout << result.dump() << '\n';
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
