#ifndef EEGTDA_EEGTDA_H
#define EEGTDA_EEGTDA_H

/* C interface to the eegtda library: EEG ingestion, DyCA/PCA reduction,
 * Vietoris-Rips persistence, persistence landscapes, topological features
 * and SVM classification.
 *
 * Conventions:
 *  - Every fallible function returns an eegtda_status. On failure the output
 *    handle is left untouched and eegtda_last_error() describes the problem
 *    (thread-local, valid until the next failing call on the same thread).
 *  - Handles are opaque and immutable once created, so they may be read from
 *    several threads at once. Free each with its matching *_free function;
 *    passing NULL to *_free is allowed.
 *  - Strings returned by accessors are owned by the handle.
 *  - Matrices are passed row-major. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(EEGTDA_BUILDING_LIBRARY)
#    define EEGTDA_API __declspec(dllexport)
#  else
#    define EEGTDA_API __declspec(dllimport)
#  endif
#else
#  define EEGTDA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eegtda_status {
    EEGTDA_OK = 0,
    EEGTDA_WARN_NOT_CONVERGED = 1, /* result produced, solver hit its budget */
    EEGTDA_ERR_PARSE = 2,
    EEGTDA_ERR_UNSUPPORTED_FORMAT = 3,
    EEGTDA_ERR_CONFIG = 4,
    EEGTDA_ERR_RANGE = 5,
    EEGTDA_ERR_INSUFFICIENT_DATA = 6,
    EEGTDA_ERR_NUMERICAL = 7,
    EEGTDA_ERR_AMBIGUOUS_MODEL = 8,
    EEGTDA_ERR_DATA = 9,
    EEGTDA_ERR_NOT_FOUND = 10,
    EEGTDA_ERR_IO = 11,
    EEGTDA_ERR_HASH_MISMATCH = 12,
    EEGTDA_ERR_GENERATION = 13,
    EEGTDA_ERR_INVALID_ARGUMENT = 14,
    EEGTDA_ERR_INTERNAL = 15
} eegtda_status;

/* Short machine-readable category, e.g. "parse" or "config". */
EEGTDA_API const char* eegtda_status_category(eegtda_status status);
EEGTDA_API const char* eegtda_last_error(void);
EEGTDA_API const char* eegtda_version(void);

enum { EEGTDA_LABEL_BACKGROUND = -1, EEGTDA_LABEL_UNLABELED = 0, EEGTDA_LABEL_IED = 1 };

typedef struct eegtda_meta {
    const char* key;
    const char* value;
} eegtda_meta;

/* ---------------------------------------------------------------- recording */

typedef struct eegtda_recording eegtda_recording;

/* samples: channels x sample_count, row-major. */
EEGTDA_API eegtda_status eegtda_recording_create(const char* const* labels, size_t channels, const double* samples,
                                                 size_t sample_count, double rate, eegtda_recording** out);
EEGTDA_API eegtda_status eegtda_recording_read_edf(const char* path, eegtda_recording** out);
EEGTDA_API eegtda_status eegtda_recording_read_csv(const char* path, double rate, eegtda_recording** out);
EEGTDA_API eegtda_status eegtda_recording_write_edf(const eegtda_recording* rec, const char* path);
/* meta becomes "# key: value" lines before the header; may be NULL. */
EEGTDA_API eegtda_status eegtda_recording_write_csv(const eegtda_recording* rec, const char* path,
                                                    const eegtda_meta* meta, size_t meta_count);
EEGTDA_API size_t eegtda_recording_channels(const eegtda_recording* rec);
EEGTDA_API size_t eegtda_recording_samples(const eegtda_recording* rec);
EEGTDA_API double eegtda_recording_rate(const eegtda_recording* rec);
EEGTDA_API const char* eegtda_recording_label(const eegtda_recording* rec, size_t channel);
/* Copies channels x samples values row-major; capacity is in doubles. */
EEGTDA_API eegtda_status eegtda_recording_copy_data(const eegtda_recording* rec, double* out, size_t capacity);
EEGTDA_API void eegtda_recording_free(eegtda_recording* rec);

/* ------------------------------------------------------------------ montage */

typedef struct eegtda_montage eegtda_montage;

EEGTDA_API eegtda_status eegtda_montage_read(const char* path, eegtda_montage** out);
/* name: "bipolar", "average" or "cz_reference". */
EEGTDA_API eegtda_status eegtda_montage_standard(const char* name, eegtda_montage** out);
EEGTDA_API eegtda_status eegtda_montage_write(const eegtda_montage* mon, const char* path);
EEGTDA_API const char* eegtda_montage_name(const eegtda_montage* mon);
EEGTDA_API size_t eegtda_montage_outputs(const eegtda_montage* mon);
EEGTDA_API eegtda_status eegtda_montage_apply(const eegtda_montage* mon, const eegtda_recording* rec,
                                              eegtda_recording** out);
EEGTDA_API void eegtda_montage_free(eegtda_montage* mon);

/* ----------------------------------------------------------------- segments */

typedef struct eegtda_segments eegtda_segments;

/* Non-overlapping unlabeled windows. */
EEGTDA_API eegtda_status eegtda_segments_tile(const eegtda_recording* rec, const char* source_id,
                                              double window_seconds, eegtda_segments** out);
/* One window per label-file row whose source_id matches. */
EEGTDA_API eegtda_status eegtda_segments_labeled(const eegtda_recording* rec, const char* source_id,
                                                 double window_seconds, const char* labels_path,
                                                 eegtda_segments** out);
EEGTDA_API size_t eegtda_segments_count(const eegtda_segments* segs);
EEGTDA_API const char* eegtda_segment_source_id(const eegtda_segments* segs, size_t index);
EEGTDA_API size_t eegtda_segment_start(const eegtda_segments* segs, size_t index);
EEGTDA_API int eegtda_segment_label(const eegtda_segments* segs, size_t index);
EEGTDA_API eegtda_status eegtda_segment_recording(const eegtda_segments* segs, size_t index,
                                                  eegtda_recording** out);
/* Lays the segments end to end; writes the matching label file when
 * labels_path is not NULL. */
EEGTDA_API eegtda_status eegtda_segments_concatenate(const eegtda_segments* segs, const char* labels_path,
                                                     eegtda_recording** out);
EEGTDA_API void eegtda_segments_free(eegtda_segments* segs);

/* ---------------------------------------------------------------- reduction */

enum { EEGTDA_REDUCE_DYCA = 0, EEGTDA_REDUCE_PCA = 1 };

typedef struct eegtda_reduce_options {
    int method;           /* EEGTDA_REDUCE_* */
    int n;                /* trajectory dimension */
    int m;                /* DyCA linear components */
    int use_threshold;    /* DyCA: select by eigenvalue threshold */
    double eig_threshold; /* used when use_threshold != 0 */
} eegtda_reduce_options;

EEGTDA_API void eegtda_reduce_options_default(eegtda_reduce_options* opts);

typedef struct eegtda_trajectory eegtda_trajectory;

/* Reduces the whole recording as one segment. */
EEGTDA_API eegtda_status eegtda_reduce(const eegtda_recording* rec, const eegtda_reduce_options* opts,
                                       eegtda_trajectory** out);
EEGTDA_API eegtda_status eegtda_trajectory_create(const double* points, size_t rows, size_t cols, double rate,
                                                  eegtda_trajectory** out);
EEGTDA_API size_t eegtda_trajectory_rows(const eegtda_trajectory* traj);
EEGTDA_API size_t eegtda_trajectory_cols(const eegtda_trajectory* traj);
EEGTDA_API eegtda_status eegtda_trajectory_copy_points(const eegtda_trajectory* traj, double* out, size_t capacity);
/* Full spectrum (DyCA generalized or PCA), descending; empty after reading
 * a trajectory file. */
EEGTDA_API size_t eegtda_trajectory_eigenvalue_count(const eegtda_trajectory* traj);
EEGTDA_API double eegtda_trajectory_eigenvalue(const eegtda_trajectory* traj, size_t index);
EEGTDA_API eegtda_status eegtda_trajectory_write_csv(const eegtda_trajectory* traj, const char* path,
                                                     const eegtda_meta* meta, size_t meta_count);
EEGTDA_API eegtda_status eegtda_trajectory_read_csv(const char* path, eegtda_trajectory** out);
EEGTDA_API void eegtda_trajectory_free(eegtda_trajectory* traj);

/* ----------------------------------------------------------------- homology */

enum { EEGTDA_SCHEME_COHOMOLOGY = 0, EEGTDA_SCHEME_BOUNDARY = 1 };

typedef struct eegtda_homology_options {
    int has_max_length; /* 0: full diameter */
    double max_length;
    int scheme; /* EEGTDA_SCHEME_* */
} eegtda_homology_options;

EEGTDA_API void eegtda_homology_options_default(eegtda_homology_options* opts);

typedef struct eegtda_diagram eegtda_diagram;

EEGTDA_API eegtda_status eegtda_diagram_compute(const eegtda_trajectory* traj, const eegtda_homology_options* opts,
                                                eegtda_diagram** out);
EEGTDA_API size_t eegtda_diagram_size(const eegtda_diagram* diag);
/* death is +inf for essential classes. */
EEGTDA_API eegtda_status eegtda_diagram_pair(const eegtda_diagram* diag, size_t index, int* dimension,
                                             double* birth, double* death);
EEGTDA_API eegtda_status eegtda_diagram_write_csv(const eegtda_diagram* diag, const char* path,
                                                  const eegtda_meta* meta, size_t meta_count);
EEGTDA_API eegtda_status eegtda_diagram_read_csv(const char* path, eegtda_diagram** out);
EEGTDA_API void eegtda_diagram_free(eegtda_diagram* diag);

/* ---------------------------------------------------------------- landscape */

typedef struct eegtda_landscape eegtda_landscape;

typedef struct eegtda_norms {
    double l1;
    double l2;
    double sup;
    double argmax;
} eegtda_norms;

EEGTDA_API eegtda_status eegtda_landscape_build(const eegtda_diagram* diag, int dimension, int max_levels,
                                                eegtda_landscape** out);
EEGTDA_API size_t eegtda_landscape_levels(const eegtda_landscape* ls);
/* level counts from 1; absent levels have no vertices. */
EEGTDA_API size_t eegtda_landscape_level_size(const eegtda_landscape* ls, size_t level);
EEGTDA_API eegtda_status eegtda_landscape_vertex(const eegtda_landscape* ls, size_t level, size_t index, double* t,
                                                 double* value);
EEGTDA_API double eegtda_landscape_evaluate(const eegtda_landscape* ls, size_t level, double t);
EEGTDA_API eegtda_status eegtda_landscape_norms(const eegtda_landscape* ls, int level, eegtda_norms* out);
EEGTDA_API eegtda_status eegtda_landscape_write_csv(const eegtda_landscape* ls, const char* path,
                                                    const eegtda_meta* meta, size_t meta_count);
EEGTDA_API void eegtda_landscape_free(eegtda_landscape* ls);

/* ----------------------------------------------------------------- features */

EEGTDA_API size_t eegtda_feature_count(void);
EEGTDA_API int eegtda_feature_schema_version(void);
EEGTDA_API const char* eegtda_feature_name(size_t index);
/* out receives eegtda_feature_count() values. */
EEGTDA_API eegtda_status eegtda_features_extract(const eegtda_diagram* diag, double* out);

typedef struct eegtda_table eegtda_table;

EEGTDA_API eegtda_status eegtda_table_create(eegtda_table** out);
/* Tables are the one mutable handle: appending is not thread-safe. */
EEGTDA_API eegtda_status eegtda_table_append(eegtda_table* table, const char* source_id, size_t start_sample,
                                             int label, const double* values);
EEGTDA_API eegtda_status eegtda_table_read_csv(const char* path, eegtda_table** out);
EEGTDA_API eegtda_status eegtda_table_write_csv(const eegtda_table* table, const char* path,
                                                const eegtda_meta* meta, size_t meta_count);
EEGTDA_API size_t eegtda_table_rows(const eegtda_table* table);
EEGTDA_API eegtda_status eegtda_table_row(const eegtda_table* table, size_t index, const char** source_id,
                                          size_t* start_sample, int* label, double* values);
/* Metadata read from the file, NULL when absent. */
EEGTDA_API const char* eegtda_table_meta(const eegtda_table* table, const char* key);
EEGTDA_API void eegtda_table_free(eegtda_table* table);

/* ---------------------------------------------------------------------- svm */

enum { EEGTDA_KERNEL_LINEAR = 0, EEGTDA_KERNEL_RBF = 1 };

typedef struct eegtda_grid_cell {
    int kernel;   /* EEGTDA_KERNEL_* */
    double gamma; /* RBF only; <= 0 selects 1/(d * var) of the training data */
    double c;
} eegtda_grid_cell;

typedef struct eegtda_train_config {
    const eegtda_grid_cell* grid; /* NULL or grid_size 0: default grid */
    size_t grid_size;
    int folds;
    double test_fraction; /* 0: no held-out part */
    uint64_t seed;
    double tol;
    int max_passes;
} eegtda_train_config;

EEGTDA_API void eegtda_train_config_default(eegtda_train_config* config);

typedef struct eegtda_report {
    double accuracy;
    size_t confusion[2][2]; /* [true][predicted], 0 = background, 1 = IED */
    size_t total;
} eegtda_report;

typedef struct eegtda_model eegtda_model;
typedef struct eegtda_training eegtda_training;

/* Uses the labeled rows of the table. Returns EEGTDA_WARN_NOT_CONVERGED,
 * with *out set, when the final model is flagged as not converged. */
EEGTDA_API eegtda_status eegtda_train(const eegtda_table* table, const eegtda_train_config* config,
                                      eegtda_training** out);
EEGTDA_API eegtda_status eegtda_training_model(const eegtda_training* tr, eegtda_model** out);
EEGTDA_API void eegtda_training_best(const eegtda_training* tr, eegtda_grid_cell* out);
EEGTDA_API size_t eegtda_training_cell_count(const eegtda_training* tr);
/* folds receives up to fold_capacity per-fold accuracies. */
EEGTDA_API eegtda_status eegtda_training_cell(const eegtda_training* tr, size_t index, eegtda_grid_cell* cell,
                                              double* mean_accuracy, double* folds, size_t fold_capacity);
/* part 0: training rows, 1: held-out rows. */
EEGTDA_API void eegtda_training_report(const eegtda_training* tr, int part, eegtda_report* out);
/* Indices into the labeled rows of the table, in table order. */
EEGTDA_API size_t eegtda_training_part_size(const eegtda_training* tr, int part);
EEGTDA_API size_t eegtda_training_part_index(const eegtda_training* tr, int part, size_t index);
EEGTDA_API void eegtda_training_free(eegtda_training* tr);

EEGTDA_API eegtda_status eegtda_model_save(const eegtda_model* model, const char* path);
EEGTDA_API eegtda_status eegtda_model_load(const char* path, eegtda_model** out);
/* Returns a copy with the metadata entry set. */
EEGTDA_API eegtda_status eegtda_model_with_meta(const eegtda_model* model, const char* key, const char* value,
                                                eegtda_model** out);
EEGTDA_API const char* eegtda_model_meta(const eegtda_model* model, const char* key);
EEGTDA_API void eegtda_model_params(const eegtda_model* model, eegtda_grid_cell* cell, int* converged,
                                    size_t* support_vectors);
EEGTDA_API eegtda_status eegtda_model_decision(const eegtda_model* model, const double* features, double* out);
/* rows: labeled-row indices to use, or NULL for every labeled row. */
EEGTDA_API eegtda_status eegtda_model_evaluate(const eegtda_model* model, const eegtda_table* table,
                                               const size_t* rows, size_t row_count, eegtda_report* out);
EEGTDA_API void eegtda_model_free(eegtda_model* model);

/* -------------------------------------------------------------------- synth */

enum { EEGTDA_SYNTH_HARMONIC = 0, EEGTDA_SYNTH_ROSSLER = 1, EEGTDA_SYNTH_NOISE = 2 };

typedef struct eegtda_synth_spec {
    int system; /* EEGTDA_SYNTH_* */
    double rossler_a, rossler_b, rossler_c;
    double omega;
    double time_scale;
    double duration;
    double rate;
    int channels;
    uint64_t seed;
    int has_snr;
    double snr_db;
    double noise_sigma;
    int identity_mixing;
    double burn_in;
} eegtda_synth_spec;

EEGTDA_API void eegtda_synth_spec_default(eegtda_synth_spec* spec);
/* labels: spec->channels names, or NULL for ch1..chM. */
EEGTDA_API eegtda_status eegtda_synth_generate(const eegtda_synth_spec* spec, const char* const* labels,
                                               eegtda_recording** out);

typedef struct eegtda_corpus_options {
    double rate;
    double window_seconds;
    int channels;
    double time_scale;
    double positive_snr_db;
    double noise_smoothing;
    const char* source_id;
} eegtda_corpus_options;

EEGTDA_API void eegtda_corpus_options_default(eegtda_corpus_options* opts);
/* n_pos IED segments followed by n_neg background segments. */
EEGTDA_API eegtda_status eegtda_corpus(int n_pos, int n_neg, uint64_t seed, const eegtda_corpus_options* opts,
                                       eegtda_segments** out);

#ifdef __cplusplus
}
#endif

#endif
