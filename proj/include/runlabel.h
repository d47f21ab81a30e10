/*
 * runlabel C API.
 *
 * Every function returns an rl_status; on failure rl_last_error() holds a
 * one-line message for the calling thread. Strings and arrays handed back
 * through out-parameters are heap allocated and released with rl_free().
 * Structured results are JSON text in the formats documented in README.md.
 */
#ifndef RUNLABEL_H
#define RUNLABEL_H

#include <stddef.h>
#include <stdint.h>

#if defined(RL_BUILDING_LIBRARY)
#define RL_API __attribute__((visibility("default")))
#else
#define RL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rl_status {
  RL_OK = 0,
  RL_E_INVALID_ARGUMENT = 1,
  RL_E_MALFORMED_DOCUMENT = 2,
  RL_E_IO = 3,
  RL_E_NOT_FOUND = 4,
  RL_E_CONFLICT = 5,
  RL_E_INTERNAL = 6,

  RL_E_DEGENERATE_BOX = 10,
  RL_E_NEGATIVE_COORDINATE = 11,
  RL_E_MALFORMED_TIME = 12,
  RL_E_INVALID_IDENTITY = 13,
  RL_E_INVALID_TRACK = 14,
  RL_E_INVALID_CONFIDENCE = 15,

  RL_E_MISSING_COLUMN = 20,
  RL_E_MALFORMED_ROW = 21,
  RL_E_DUPLICATE_BIB = 22,
  RL_E_NON_DIVISOR_FPS = 23,
  RL_E_EMPTY_MANIFEST = 24,
  RL_E_MALFORMED_MANIFEST = 25,

  RL_E_COMPONENT_OUT_OF_RANGE = 30,
  RL_E_EMPTY_SAMPLE = 31,
  RL_E_INSUFFICIENT_DISTINCT_SCORES = 32,

  RL_E_UNDEFINED_METRIC = 40,
  RL_E_ZERO_TOTAL = 41,

  RL_E_NON_MONOTONE_SPLIT = 50,
  RL_E_INSUFFICIENT_SPLITS = 51,
  RL_E_CHECKPOINT_OUT_OF_RANGE = 52,
  RL_E_UNKNOWN_LOCATION = 53,
  RL_E_DIMENSION_MISMATCH = 54,
  RL_E_EMPTY_GALLERY = 55,
  RL_E_UNDECODABLE_IMAGE = 56,

  RL_E_PORT_IN_USE = 60,
  RL_E_MISSING_DATA_ROOT = 61
} rl_status;

RL_API const char* rl_version(void);
/* Message of the last failed call on this thread; "" after a success. */
RL_API const char* rl_last_error(void);
/* Symbolic name of a status, e.g. "NonDivisorFps". */
RL_API const char* rl_status_name(int status);
RL_API void rl_free(void* p);

/* ---- geometry and time ---- */

/* Boxes are {x_min, y_min, x_max, y_max}. */
RL_API int rl_iou(const double a[4], const double b[4], double* out);
/* H:MM:SS, HH:MM:SS or MM:SS to seconds. */
RL_API int rl_parse_clock_time(const char* text, int64_t* out_seconds);

/* ---- frames ---- */

/* Indices 0, s, 2s, ... with s = 30 / target_fps. */
RL_API int rl_subsample_frames(int64_t frame_count, int target_fps, int64_t** out_indices, size_t* out_len);
/* Number of frames listed in <dir>/frames.txt. */
RL_API int rl_frame_dir_count(const char* dir, int64_t* out_count);

/* ---- ingest ---- */

/* Manifest JSON -> {"videos": [...], "stats": {...}}. */
RL_API int rl_ingest_manifest(const char* manifest_json, char** out_json);
/* Problems of an annotation document against its manifest entry:
 * {"problems": ["...", ...]}. */
RL_API int rl_validate_annotation(const char* document_json, const char* video_meta_json, char** out_json);

/* ---- location sampling ---- */

RL_API int rl_ks_statistic(const double* a, size_t na, const double* b, size_t nb, double* out);
RL_API int rl_ks_critical_value(long long n1, long long n2, double c_alpha, double* out);
/* Scores CSV text in, selection JSON out. exhaustive != 0 ignores seed and
 * iterations. */
RL_API int rl_sample_locations(const char* scores_csv, int k, double c_alpha, uint64_t seed, int iterations,
                               int exhaustive, char** out_json);

/* ---- engine ---- */

/* Keyframes [{"frame_index", "box"}] or a track {"identity", "keyframes"}
 * -> [{"frame_index", "box"}]. round_export != 0 rounds corners half-up. */
RL_API int rl_interpolate(const char* keyframes_json, int round_export, char** out_json);
/* Path-supervision JSON + detections JSON -> link result JSON. */
RL_API int rl_link(const char* paths_json, const char* detections_json, char** out_json);
/* Ground-truth document + predictions (detections list or document) ->
 * evaluation report. unit_costs_json may be NULL. */
RL_API int rl_evaluate(const char* ground_truth_json, const char* predictions_json, const char* unit_costs_json,
                       char** out_json);

typedef struct rl_prf1 {
  int has_precision;
  double precision;
  int has_recall;
  double recall;
  int has_f1;
  double f1;
} rl_prf1;

RL_API int rl_precision_recall_f1(int64_t tp, int64_t fp, int64_t fn, rl_prf1* out);

typedef struct rl_unit_costs {
  double removal_s;
  double addition_s;
  double adjustment_s;
  double label_s;
} rl_unit_costs;

typedef struct rl_workload_counts {
  int64_t removals;
  int64_t additions;
  int64_t adjustments;
  int64_t labels;
} rl_workload_counts;

RL_API void rl_default_unit_costs(rl_unit_costs* out);
/* costs may be NULL for the defaults. */
RL_API int rl_workload_seconds(const rl_workload_counts* counts, const rl_unit_costs* costs, double* out_total_s);
/* Percentage of runners left unidentified. */
RL_API int rl_unidentified_rate(int64_t total, int64_t identified, double* out_percent);

/* ---- runners and alignment ---- */

typedef struct rl_runner_db rl_runner_db;

/* Loads results CSVs (race inferred per file) and computes timelines.
 * checkpoints_csv may be NULL for location i at i km. */
RL_API int rl_runner_db_open(const char* const* csv_paths, size_t n_paths, const char* checkpoints_csv,
                             rl_runner_db** out);
RL_API void rl_runner_db_close(rl_runner_db* db);
RL_API size_t rl_runner_db_size(const rl_runner_db* db);

enum { RL_SEARCH_ANY = 0, RL_SEARCH_NAME = 1, RL_SEARCH_BIB = 2 };

RL_API int rl_runner_db_search(const rl_runner_db* db, const char* fragment, int field, char** out_json);
RL_API int rl_runner_db_timeline(const rl_runner_db* db, int64_t bib, char** out_json);
/* CSV bib,location_number,estimated_passing_s for every runner. */
RL_API int rl_runner_db_timelines_csv(const rl_runner_db* db, char** out_csv);
/* Bibs passing the location within [t - delta, t + delta]. */
RL_API int rl_runner_db_window(const rl_runner_db* db, int location, double t_s, double delta_s,
                               int64_t** out_bibs, size_t* out_len);

typedef struct rl_id_counter rl_id_counter;

/* state_json may be NULL for a fresh counter. Calls on one counter are
 * serialized internally. */
RL_API int rl_id_counter_new(const char* state_json, rl_id_counter** out);
RL_API void rl_id_counter_free(rl_id_counter* c);
RL_API int rl_id_counter_next(rl_id_counter* c, int location, char** out_identity);
RL_API int rl_id_counter_state(const rl_id_counter* c, char** out_json);

/* ---- re-identification ---- */

typedef struct rl_gallery rl_gallery;

RL_API int rl_gallery_load(const char* path, rl_gallery** out);
RL_API int rl_gallery_parse(const char* gallery_json, rl_gallery** out);
RL_API void rl_gallery_free(rl_gallery* g);
RL_API size_t rl_gallery_size(const rl_gallery* g);
/* Feature of a gallery image by id, copied out. */
RL_API int rl_gallery_feature(const rl_gallery* g, const char* image_id, double** out, size_t* out_dim);
RL_API int rl_gallery_rank(const rl_gallery* g, const double* probe, size_t dim, size_t k, char** out_json);
/* Embeds an encoded image with the baseline feature, then ranks. */
RL_API int rl_gallery_rank_image(const rl_gallery* g, const uint8_t* bytes, size_t len, size_t k, char** out_json);
RL_API int rl_embed_image(const uint8_t* bytes, size_t len, double** out, size_t* out_dim);

/* ---- service ---- */

typedef struct rl_service rl_service;

/* Unset fields fall back to the environment (PORT, DATA_ROOT,
 * DELTA_T_DEFAULT, REID_TOP_K), then to the defaults: host NULL,
 * port < 0, data_root NULL, delta_t_default < 0, reid_top_k <= 0. */
typedef struct rl_service_config {
  const char* host;
  int port;
  const char* data_root;
  double delta_t_default;
  int reid_top_k;
} rl_service_config;

RL_API void rl_service_config_init(rl_service_config* config);
RL_API int rl_service_create(const rl_service_config* config, rl_service** out);
RL_API int rl_service_start(rl_service* s);
RL_API int rl_service_port(const rl_service* s);
RL_API int rl_service_wait(rl_service* s);
RL_API int rl_service_stop(rl_service* s);
RL_API void rl_service_destroy(rl_service* s);

#ifdef __cplusplus
}
#endif

#endif
