#include "dcid/dcid.h"

#include "dcid/dcid.hpp"
#include "dcid/error.hpp"
#include "dcid/harness.hpp"
#include "dcid/icm.hpp"
#include "dcid/mtl.hpp"
#include "dcid/serialization.hpp"

#include <cstdlib>
#include <memory>
#include <new>
#include <string>
#include <variant>

struct dcid_dataset {
    dcid::GroundTruthDataset data;
};

struct dcid_model {
    std::variant<dcid::SharedEstimate, dcid::MtlModel> fit;
    double t_mtl = 0.5;
    dcid::R2Options r2;
};

namespace {

thread_local std::string last_error;

dcid_status fail(dcid_status status, const std::string& message)
{
    last_error = message;
    return status;
}

template <typename Fn>
dcid_status guard(Fn&& fn)
{
    try {
        fn();
        last_error.clear();
        return DCID_OK;
    } catch (const dcid::ValidationError& e) {
        return fail(DCID_ERR_INVALID_ARGUMENT, e.what());
    } catch (const dcid::RankDeficiencyError& e) {
        return fail(DCID_ERR_RANK_DEFICIENT, e.what());
    } catch (const dcid::DivergenceError& e) {
        return fail(DCID_ERR_DIVERGED, e.what());
    } catch (const dcid::EmptyEstimateError& e) {
        return fail(DCID_ERR_EMPTY_ESTIMATE, e.what());
    } catch (const dcid::SelectionError& e) {
        return fail(DCID_ERR_SELECTION, e.what());
    } catch (const dcid::IoError& e) {
        return fail(DCID_ERR_IO, e.what());
    } catch (const dcid::Json::exception& e) {
        return fail(DCID_ERR_INVALID_ARGUMENT, std::string("invalid JSON: ") + e.what());
    } catch (const std::bad_alloc&) {
        return fail(DCID_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(DCID_ERR_INTERNAL, e.what());
    }
}

void require(const void* p, const char* name)
{
    if (p == nullptr) {
        throw dcid::ValidationError(std::string(name) + " is null");
    }
}

dcid::Json parse_optional(const char* text)
{
    if (text == nullptr || *text == '\0') {
        return dcid::Json::object();
    }
    return dcid::Json::parse(text);
}

void fill(dcid_matrix* out, const dcid::Matrix& m)
{
    out->data = nullptr;
    out->rows = static_cast<size_t>(m.rows());
    out->cols = static_cast<size_t>(m.cols());
    if (m.size() == 0) {
        return;
    }
    out->data = static_cast<double*>(std::malloc(sizeof(double) * static_cast<size_t>(m.size())));
    if (out->data == nullptr) {
        throw std::bad_alloc();
    }
    size_t k = 0;
    for (dcid::Index i = 0; i < m.rows(); ++i) {
        for (dcid::Index j = 0; j < m.cols(); ++j) {
            out->data[k++] = m(i, j);
        }
    }
}

dcid::Matrix from_row_major(const double* data, size_t rows, size_t cols)
{
    if (rows * cols > 0) {
        require(data, "matrix data");
    }
    dcid::Matrix m(static_cast<dcid::Index>(rows), static_cast<dcid::Index>(cols));
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) {
            m(static_cast<dcid::Index>(i), static_cast<dcid::Index>(j)) = data[i * cols + j];
        }
    }
    return m;
}

dcid::Matrix estimate(const dcid_model& model, const dcid::Matrix& x, bool allow_empty)
{
    if (const auto* est = std::get_if<dcid::SharedEstimate>(&model.fit)) {
        if (est->n_selected == 0 && allow_empty) {
            return dcid::Matrix(x.rows(), 0);
        }
        return dcid::predict_shared(*est, x);
    }
    const auto& mtl = std::get<dcid::MtlModel>(model.fit);
    return dcid::select_cols(mtl.net.features(x), dcid::select_shared_features(mtl, model.t_mtl));
}

dcid::ExperimentConfig experiment(const char* config_json, int64_t master_seed, size_t workers, double threshold)
{
    dcid::ExperimentConfig cfg = dcid::experiment_config_from_json(parse_optional(config_json));
    if (master_seed >= 0) cfg.master_seed = static_cast<std::uint64_t>(master_seed);
    if (workers > 0) cfg.workers = workers;
    if (threshold >= 0.0) cfg.dcid.threshold = threshold;
    return cfg;
}

} // namespace

extern "C" {

const char* dcid_last_error(void)
{
    return last_error.c_str();
}

const char* dcid_version(void)
{
    return dcid::kVersion;
}

const char* dcid_status_name(dcid_status status)
{
    switch (status) {
    case DCID_OK: return "ok";
    case DCID_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DCID_ERR_RANK_DEFICIENT: return "rank deficient";
    case DCID_ERR_DIVERGED: return "diverged";
    case DCID_ERR_EMPTY_ESTIMATE: return "empty estimate";
    case DCID_ERR_SELECTION: return "selection error";
    case DCID_ERR_IO: return "i/o error";
    case DCID_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void dcid_matrix_free(dcid_matrix* m)
{
    if (m == nullptr) return;
    std::free(m->data);
    m->data = nullptr;
    m->rows = 0;
    m->cols = 0;
}

dcid_status dcid_dataset_generate(const char* scenario_json, dcid_dataset** out)
{
    return guard([&] {
        require(out, "out");
        *out = nullptr;
        const dcid::ScenarioConfig cfg = dcid::scenario_config_from_json(parse_optional(scenario_json));
        *out = new dcid_dataset{dcid::generate_dataset(cfg)};
    });
}

dcid_status dcid_dataset_load(const char* dir, dcid_dataset** out)
{
    return guard([&] {
        require(dir, "dir");
        require(out, "out");
        *out = nullptr;
        *out = new dcid_dataset{dcid::load_dataset(dir)};
    });
}

dcid_status dcid_dataset_save(const dcid_dataset* dataset, const char* dir)
{
    return guard([&] {
        require(dataset, "dataset");
        require(dir, "dir");
        dcid::save_dataset(dataset->data, dir);
    });
}

dcid_status dcid_dataset_export_csv(const dcid_dataset* dataset, const char* path)
{
    return guard([&] {
        require(dataset, "dataset");
        require(path, "path");
        dcid::export_csv(dataset->data, path);
    });
}

void dcid_dataset_free(dcid_dataset* dataset)
{
    delete dataset;
}

dcid_status dcid_dataset_shape(const dcid_dataset* dataset, size_t* rows, size_t* dim_obs, size_t* dim_shared,
                               size_t* dim_indiv)
{
    return guard([&] {
        require(dataset, "dataset");
        const auto& d = dataset->data;
        if (rows) *rows = static_cast<size_t>(d.rows());
        if (dim_obs) *dim_obs = static_cast<size_t>(d.x.cols());
        if (dim_shared) *dim_shared = static_cast<size_t>(d.z.cols());
        if (dim_indiv) *dim_indiv = static_cast<size_t>(d.z1.cols());
    });
}

dcid_status dcid_dataset_test_rows(const dcid_dataset* dataset, size_t* count)
{
    return guard([&] {
        require(dataset, "dataset");
        require(count, "count");
        *count = dataset->data.split_counts()[2];
    });
}

dcid_status dcid_dataset_verify_ratios(const dcid_dataset* dataset, double* tau_hat, double* kappa_hat)
{
    return guard([&] {
        require(dataset, "dataset");
        const dcid::RatioEstimate r = dcid::verify_ratios(dataset->data);
        if (tau_hat) *tau_hat = r.tau_hat;
        if (kappa_hat) *kappa_hat = r.kappa_hat;
    });
}

dcid_status dcid_fit(const dcid_dataset* dataset, const char* method, const char* config_json, dcid_model** out)
{
    return guard([&] {
        require(dataset, "dataset");
        require(method, "method");
        require(out, "out");
        *out = nullptr;
        const dcid::ExperimentConfig cfg = dcid::experiment_config_from_json(parse_optional(config_json));
        const std::string name = method;
        auto model = std::make_unique<dcid_model>();
        model->r2 = cfg.r2;
        model->t_mtl = cfg.mtl.t_mtl;
        if (name == "dcid") {
            model->fit = dcid::fit_dcid(dataset->data, cfg.dcid);
        } else if (name == "mtl") {
            if (!(cfg.mtl.t_mtl >= 0.0 && cfg.mtl.t_mtl <= 1.0)) {
                throw dcid::ValidationError("t_mtl must lie in [0, 1]");
            }
            model->fit = dcid::train_mtl(dataset->data, cfg.mtl.net, cfg.mtl.train);
        } else {
            throw dcid::ValidationError("fit: method must be dcid or mtl, got '" + name + "'");
        }
        *out = model.release();
    });
}

dcid_status dcid_model_save(const dcid_model* model, const char* path)
{
    return guard([&] {
        require(model, "model");
        require(path, "path");
        if (const auto* est = std::get_if<dcid::SharedEstimate>(&model->fit)) {
            dcid::write_json_file(path, dcid::to_json(*est));
        } else {
            dcid::write_json_file(path, dcid::to_json(std::get<dcid::MtlModel>(model->fit), model->t_mtl));
        }
    });
}

dcid_status dcid_model_load(const char* path, dcid_model** out)
{
    return guard([&] {
        require(path, "path");
        require(out, "out");
        *out = nullptr;
        const dcid::Json j = dcid::read_json_file(path);
        auto model = std::make_unique<dcid_model>();
        const std::string kind = j.is_object() && j.contains("kind") ? j.at("kind").get<std::string>() : "";
        if (kind == "dcid") {
            model->fit = dcid::shared_estimate_from_json(j);
        } else if (kind == "mtl") {
            model->fit = dcid::mtl_model_from_json(j, &model->t_mtl);
        } else {
            throw dcid::ValidationError(std::string(path) + ": not a saved dcid or mtl model");
        }
        *out = model.release();
    });
}

void dcid_model_free(dcid_model* model)
{
    delete model;
}

dcid_status dcid_model_method(const dcid_model* model, const char** method)
{
    return guard([&] {
        require(model, "model");
        require(method, "method");
        *method = std::holds_alternative<dcid::SharedEstimate>(model->fit) ? "dcid" : "mtl";
    });
}

dcid_status dcid_model_n_components(const dcid_model* model, size_t* n)
{
    return guard([&] {
        require(model, "model");
        require(n, "n");
        if (const auto* est = std::get_if<dcid::SharedEstimate>(&model->fit)) {
            *n = static_cast<size_t>(est->n_selected);
        } else {
            *n = dcid::select_shared_features(std::get<dcid::MtlModel>(model->fit), model->t_mtl).size();
        }
    });
}

dcid_status dcid_model_predict(const dcid_model* model, const double* x, size_t rows, size_t cols, dcid_matrix* out)
{
    return guard([&] {
        require(model, "model");
        require(out, "out");
        *out = dcid_matrix{nullptr, 0, 0};
        fill(out, estimate(*model, from_row_major(x, rows, cols), false));
    });
}

dcid_status dcid_model_estimate_test(const dcid_model* model, const dcid_dataset* dataset, dcid_matrix* out)
{
    return guard([&] {
        require(model, "model");
        require(dataset, "dataset");
        require(out, "out");
        *out = dcid_matrix{nullptr, 0, 0};
        const auto rows = dataset->data.rows_in(dcid::Split::test);
        fill(out, estimate(*model, dcid::select_rows(dataset->data.x, rows), true));
    });
}

dcid_status dcid_score_icm(const dcid_dataset* dataset, const double* z_hat_test, size_t rows, size_t cols,
                           dcid_icm_score* out)
{
    return guard([&] {
        require(dataset, "dataset");
        require(out, "out");
        const dcid::IcmScore s = dcid::score_icm(from_row_major(z_hat_test, rows, cols), dataset->data);
        *out = dcid_icm_score{s.informativeness, s.compactness, s.minimality, s.icm,
                              static_cast<size_t>(s.n_components)};
    });
}

dcid_status dcid_surrogate(const dcid_model* model, const dcid_dataset* dataset, dcid_surrogate_result* out,
                           dcid_matrix* psi1_hat)
{
    return guard([&] {
        require(model, "model");
        require(dataset, "dataset");
        require(out, "out");
        const auto* est = std::get_if<dcid::SharedEstimate>(&model->fit);
        if (est == nullptr) {
            throw dcid::ValidationError("surrogate: needs a dcid model");
        }
        const dcid::SurrogateResult r = dcid::surrogate_psi1(*est, dataset->data, model->r2);
        *out = dcid_surrogate_result{r.r2_y1, r.r2_y2, r.corr_psi1_y2, r.corr_y1_y2,
                                     static_cast<size_t>(r.psi1_hat.size())};
        if (psi1_hat != nullptr) {
            *psi1_hat = dcid_matrix{nullptr, 0, 0};
            fill(psi1_hat, dcid::Matrix(r.psi1_hat));
        }
    });
}

dcid_status dcid_benchmark_run(const char* config_json, const char* out_dir, int64_t master_seed, size_t workers,
                               double threshold)
{
    return guard([&] {
        require(out_dir, "out_dir");
        const dcid::ExperimentConfig cfg = experiment(config_json, master_seed, workers, threshold);
        dcid::emit_plotdata(dcid::run_benchmark(cfg), cfg, nullptr, out_dir);
    });
}

dcid_status dcid_sweep_run(const char* config_json, const char* out_dir, int64_t master_seed, size_t workers,
                           double threshold)
{
    return guard([&] {
        require(out_dir, "out_dir");
        const dcid::Json j = parse_optional(config_json);
        const dcid::ExperimentConfig cfg = experiment(config_json, master_seed, workers, threshold);
        const dcid::SweepSpec sweep =
            dcid::sweep_spec_from_json(j.contains("sweep") ? j.at("sweep") : dcid::Json::object());
        dcid::emit_plotdata(dcid::run_sweep(cfg, sweep), cfg, &sweep, out_dir);
    });
}

} // extern "C"
