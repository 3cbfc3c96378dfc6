/* C interface to the dcid library. All handles are opaque; every call that can
 * fail returns a dcid_status and leaves a message for dcid_last_error(). */
#ifndef DCID_DCID_H
#define DCID_DCID_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DCID_API __declspec(dllexport)
#else
#define DCID_API __attribute__((visibility("default")))
#endif

typedef enum dcid_status {
    DCID_OK = 0,
    DCID_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad config, shape mismatch */
    DCID_ERR_RANK_DEFICIENT = 2,
    DCID_ERR_DIVERGED = 3,
    DCID_ERR_EMPTY_ESTIMATE = 4, /* no shared component was selected */
    DCID_ERR_SELECTION = 5,
    DCID_ERR_IO = 6,
    DCID_ERR_INTERNAL = 7
} dcid_status;

typedef struct dcid_dataset dcid_dataset;
typedef struct dcid_model dcid_model;

/* Row-major buffer owned by the library; release with dcid_matrix_free. Calls
 * that fill one overwrite it without freeing, and leave it empty on failure. */
typedef struct dcid_matrix {
    double* data;
    size_t rows;
    size_t cols;
} dcid_matrix;

typedef struct dcid_icm_score {
    double informativeness;
    double compactness;
    double minimality;
    double icm;
    size_t n_components;
} dcid_icm_score;

typedef struct dcid_surrogate_result {
    double r2_y1;
    double r2_y2;
    double corr_psi1_y2;
    double corr_y1_y2;
    size_t test_rows;
} dcid_surrogate_result;

/* Message of the last failure on the calling thread; empty after success. */
DCID_API const char* dcid_last_error(void);
DCID_API const char* dcid_version(void);
DCID_API const char* dcid_status_name(dcid_status status);

DCID_API void dcid_matrix_free(dcid_matrix* m);

/* scenario_json: a scenario object; NULL or "" uses the defaults. */
DCID_API dcid_status dcid_dataset_generate(const char* scenario_json, dcid_dataset** out);
DCID_API dcid_status dcid_dataset_load(const char* dir, dcid_dataset** out);
DCID_API dcid_status dcid_dataset_save(const dcid_dataset* dataset, const char* dir);
DCID_API dcid_status dcid_dataset_export_csv(const dcid_dataset* dataset, const char* path);
DCID_API void dcid_dataset_free(dcid_dataset* dataset);
DCID_API dcid_status dcid_dataset_shape(const dcid_dataset* dataset, size_t* rows, size_t* dim_obs,
                                        size_t* dim_shared, size_t* dim_indiv);
DCID_API dcid_status dcid_dataset_test_rows(const dcid_dataset* dataset, size_t* count);
DCID_API dcid_status dcid_dataset_verify_ratios(const dcid_dataset* dataset, double* tau_hat, double* kappa_hat);

/* method: "dcid" or "mtl". config_json: an experiment config object whose
 * "dcid", "mtl" and "r2" sections apply; NULL or "" uses the defaults. */
DCID_API dcid_status dcid_fit(const dcid_dataset* dataset, const char* method, const char* config_json,
                              dcid_model** out);
DCID_API dcid_status dcid_model_save(const dcid_model* model, const char* path);
DCID_API dcid_status dcid_model_load(const char* path, dcid_model** out);
DCID_API void dcid_model_free(dcid_model* model);
DCID_API dcid_status dcid_model_method(const dcid_model* model, const char** method);
DCID_API dcid_status dcid_model_n_components(const dcid_model* model, size_t* n);
/* x is row-major rows x cols. An estimate with zero components yields a
 * rows x 0 matrix for mtl and DCID_ERR_EMPTY_ESTIMATE for dcid. */
DCID_API dcid_status dcid_model_predict(const dcid_model* model, const double* x, size_t rows, size_t cols,
                                        dcid_matrix* out);
/* The estimate on the dataset's test rows; zero components give rows x 0. */
DCID_API dcid_status dcid_model_estimate_test(const dcid_model* model, const dcid_dataset* dataset,
                                              dcid_matrix* out);

/* z_hat_test: row-major, one row per test row of the dataset. */
DCID_API dcid_status dcid_score_icm(const dcid_dataset* dataset, const double* z_hat_test, size_t rows,
                                    size_t cols, dcid_icm_score* out);
/* psi1_hat may be NULL; otherwise it receives the test-row reconstruction. */
DCID_API dcid_status dcid_surrogate(const dcid_model* model, const dcid_dataset* dataset,
                                    dcid_surrogate_result* out, dcid_matrix* psi1_hat);

/* Both write results.csv, summary.csv, timings.csv and metadata.json into
 * out_dir; the sweep adds fig_tau.csv or fig_kappa.csv. The overrides apply
 * when non-negative / non-zero: seed < 0, workers == 0 and threshold < 0 keep
 * the config values. */
DCID_API dcid_status dcid_benchmark_run(const char* config_json, const char* out_dir, int64_t master_seed,
                                        size_t workers, double threshold);
DCID_API dcid_status dcid_sweep_run(const char* config_json, const char* out_dir, int64_t master_seed,
                                    size_t workers, double threshold);

#ifdef __cplusplus
}
#endif

#endif
