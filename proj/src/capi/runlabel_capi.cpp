#include "runlabel.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <mutex>
#include <new>
#include <set>
#include <string>
#include <vector>

#include "alignment/embed.hpp"
#include "alignment/reid.hpp"
#include "alignment/search.hpp"
#include "alignment/timeline.hpp"
#include "alignment/unique_id.hpp"
#include "core/clock.hpp"
#include "core/error.hpp"
#include "core/json_io.hpp"
#include "engine/interpolate.hpp"
#include "engine/linking.hpp"
#include "engine/matching.hpp"
#include "engine/report.hpp"
#include "ingest/frames.hpp"
#include "ingest/runners.hpp"
#include "ingest/video_meta.hpp"
#include "sampling/ks.hpp"
#include "sampling/selection.hpp"
#include "service/server.hpp"

using namespace runlabel;

#define RL_CHECK_CODE(c, name) \
  static_assert(static_cast<int>(ErrorCode::c) == name, #name " out of sync with ErrorCode")
RL_CHECK_CODE(kOk, RL_OK);
RL_CHECK_CODE(kInvalidArgument, RL_E_INVALID_ARGUMENT);
RL_CHECK_CODE(kMalformedDocument, RL_E_MALFORMED_DOCUMENT);
RL_CHECK_CODE(kIo, RL_E_IO);
RL_CHECK_CODE(kNotFound, RL_E_NOT_FOUND);
RL_CHECK_CODE(kConflict, RL_E_CONFLICT);
RL_CHECK_CODE(kInternal, RL_E_INTERNAL);
RL_CHECK_CODE(kDegenerateBox, RL_E_DEGENERATE_BOX);
RL_CHECK_CODE(kNegativeCoordinate, RL_E_NEGATIVE_COORDINATE);
RL_CHECK_CODE(kMalformedTime, RL_E_MALFORMED_TIME);
RL_CHECK_CODE(kInvalidIdentity, RL_E_INVALID_IDENTITY);
RL_CHECK_CODE(kInvalidTrack, RL_E_INVALID_TRACK);
RL_CHECK_CODE(kInvalidConfidence, RL_E_INVALID_CONFIDENCE);
RL_CHECK_CODE(kMissingColumn, RL_E_MISSING_COLUMN);
RL_CHECK_CODE(kMalformedRow, RL_E_MALFORMED_ROW);
RL_CHECK_CODE(kDuplicateBib, RL_E_DUPLICATE_BIB);
RL_CHECK_CODE(kNonDivisorFps, RL_E_NON_DIVISOR_FPS);
RL_CHECK_CODE(kEmptyManifest, RL_E_EMPTY_MANIFEST);
RL_CHECK_CODE(kMalformedManifest, RL_E_MALFORMED_MANIFEST);
RL_CHECK_CODE(kComponentOutOfRange, RL_E_COMPONENT_OUT_OF_RANGE);
RL_CHECK_CODE(kEmptySample, RL_E_EMPTY_SAMPLE);
RL_CHECK_CODE(kInsufficientDistinctScores, RL_E_INSUFFICIENT_DISTINCT_SCORES);
RL_CHECK_CODE(kUndefinedMetric, RL_E_UNDEFINED_METRIC);
RL_CHECK_CODE(kZeroTotal, RL_E_ZERO_TOTAL);
RL_CHECK_CODE(kNonMonotoneSplit, RL_E_NON_MONOTONE_SPLIT);
RL_CHECK_CODE(kInsufficientSplits, RL_E_INSUFFICIENT_SPLITS);
RL_CHECK_CODE(kCheckpointOutOfRange, RL_E_CHECKPOINT_OUT_OF_RANGE);
RL_CHECK_CODE(kUnknownLocation, RL_E_UNKNOWN_LOCATION);
RL_CHECK_CODE(kDimensionMismatch, RL_E_DIMENSION_MISMATCH);
RL_CHECK_CODE(kEmptyGallery, RL_E_EMPTY_GALLERY);
RL_CHECK_CODE(kUndecodableImage, RL_E_UNDECODABLE_IMAGE);
RL_CHECK_CODE(kPortInUse, RL_E_PORT_IN_USE);
RL_CHECK_CODE(kMissingDataRoot, RL_E_MISSING_DATA_ROOT);
#undef RL_CHECK_CODE

struct rl_runner_db {
  std::vector<RunnerRecord> runners;
  std::vector<Timeline> timelines;
};

struct rl_id_counter {
  mutable std::mutex mutex;
  UniqueIdCounter counter;
};

struct rl_gallery {
  std::vector<GalleryImage> images;
};

struct rl_service {
  std::unique_ptr<Service> service;
};

namespace {

thread_local std::string g_last_error;

int fail(ErrorCode code, const std::string& message) {
  g_last_error = message;
  return static_cast<int>(code);
}

// Runs `body`, translating exceptions into status codes.
template <class F>
int guard(F&& body) noexcept {
  try {
    g_last_error.clear();
    body();
    return RL_OK;
  } catch (const Error& e) {
    return fail(e.code(), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(ErrorCode::kMalformedDocument, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ErrorCode::kInternal, "out of memory");
  } catch (const std::exception& e) {
    return fail(ErrorCode::kInternal, e.what());
  } catch (...) {
    return fail(ErrorCode::kInternal, "unknown error");
  }
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) { *out = copy_string(s); }
void emit(char** out, const Json& j) { *out = copy_string(to_text(j)); }

template <class T>
void emit_array(const std::vector<T>& v, T** out, std::size_t* out_len) {
  T* buf = nullptr;
  if (!v.empty()) {
    buf = static_cast<T*>(std::malloc(v.size() * sizeof(T)));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, v.data(), v.size() * sizeof(T));
  }
  *out = buf;
  *out_len = v.size();
}

std::vector<KeyframeAnnotation> keyframes_of(const Json& j) {
  if (j.is_object() && j.contains("keyframes")) {
    return keyframes_from_json(j.at("keyframes"), j.value("video_id", std::string()));
  }
  return keyframes_from_json(j, {});
}

}  // namespace

extern "C" {

const char* rl_version(void) { return "0.1.0"; }
const char* rl_last_error(void) { return g_last_error.c_str(); }
const char* rl_status_name(int status) { return error_name(static_cast<ErrorCode>(status)); }
void rl_free(void* p) { std::free(p); }

int rl_iou(const double a[4], const double b[4], double* out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = iou(make_box(a[0], a[1], a[2], a[3]), make_box(b[0], b[1], b[2], b[3]));
  });
}

int rl_parse_clock_time(const char* text, int64_t* out_seconds) {
  return guard([&] {
    need(text, "text");
    need(out_seconds, "out_seconds");
    *out_seconds = parse_clock_time(text);
  });
}

int rl_subsample_frames(int64_t frame_count, int target_fps, int64_t** out_indices, size_t* out_len) {
  return guard([&] {
    need(out_indices, "out_indices");
    need(out_len, "out_len");
    const auto v = subsample_frames(frame_count, target_fps);
    emit_array(v, out_indices, out_len);
  });
}

int rl_frame_dir_count(const char* dir, int64_t* out_count) {
  return guard([&] {
    need(dir, "dir");
    need(out_count, "out_count");
    const std::filesystem::path p(dir);
    *out_count = load_frame_sequence(p, p.filename().string()).frame_count();
  });
}

int rl_ingest_manifest(const char* manifest_json, char** out_json) {
  return guard([&] {
    need(manifest_json, "manifest_json");
    need(out_json, "out_json");
    const auto videos = parse_video_manifest(parse_json(manifest_json, "manifest"));
    Json list = Json::array();
    for (const auto& v : videos) {
      auto j = video_meta_to_json(v);
      j["video_id"] = v.video_id();
      j["frame_count"] = v.frame_count();
      list.push_back(std::move(j));
    }
    emit(out_json, Json{{"videos", std::move(list)}, {"stats", dataset_stats_to_json(dataset_stats(videos))}});
  });
}

int rl_validate_annotation(const char* document_json, const char* video_meta_json, char** out_json) {
  return guard([&] {
    need(document_json, "document_json");
    need(video_meta_json, "video_meta_json");
    need(out_json, "out_json");
    const auto doc = document_from_json(parse_json(document_json, "annotation document"));
    const auto meta = video_meta_from_json(parse_json(video_meta_json, "video metadata"));
    emit(out_json, Json{{"video_id", doc.video_id}, {"problems", validate_against_video(doc, meta)}});
  });
}

int rl_ks_statistic(const double* a, size_t na, const double* b, size_t nb, double* out) {
  return guard([&] {
    need(out, "out");
    if ((na && !a) || (nb && !b)) throw Error(ErrorCode::kInvalidArgument, "sample pointer is NULL");
    *out = ks_statistic({a, na}, {b, nb});
  });
}

int rl_ks_critical_value(long long n1, long long n2, double c_alpha, double* out) {
  return guard([&] {
    need(out, "out");
    *out = ks_critical_value(n1, n2, c_alpha);
  });
}

int rl_sample_locations(const char* scores_csv, int k, double c_alpha, uint64_t seed, int iterations,
                        int exhaustive, char** out_json) {
  return guard([&] {
    need(scores_csv, "scores_csv");
    need(out_json, "out_json");
    const auto scores = parse_scores_csv(scores_csv);
    const auto totals = score_totals(scores);
    const auto sel = exhaustive ? select_sample_scores_exhaustive(totals, k, c_alpha)
                                : select_sample_scores(totals, k, c_alpha, iterations, seed);
    Json out = {{"subset", sel.subset},
                {"locations", locations_for_scores(scores, sel.subset)},
                {"statistic", sel.ks.statistic},
                {"critical_value", sel.ks.critical_value},
                {"accepted", sel.ks.accepted},
                {"candidates_evaluated", sel.candidates_evaluated},
                {"mode", exhaustive ? "exhaustive" : "random"},
                {"k", k},
                {"c_alpha", c_alpha},
                {"location_count", scores.size()}};
    if (!exhaustive) {
      out["seed"] = seed;
      out["iterations"] = iterations;
    }
    emit(out_json, out);
  });
}

int rl_interpolate(const char* keyframes_json, int round_export, char** out_json) {
  return guard([&] {
    need(keyframes_json, "keyframes_json");
    need(out_json, "out_json");
    const auto kf = keyframes_of(parse_json(keyframes_json, "keyframes"));
    emit(out_json, dense_boxes_to_json(interpolate_keyframes(kf), round_export != 0));
  });
}

int rl_link(const char* paths_json, const char* detections_json, char** out_json) {
  return guard([&] {
    need(paths_json, "paths_json");
    need(detections_json, "detections_json");
    need(out_json, "out_json");
    const auto paths = paths_from_json(parse_json(paths_json, "path supervision"));
    const auto dets = detections_from_json(parse_json(detections_json, "detections"));
    emit(out_json, link_result_to_json(link_paths_to_detections(paths, dets)));
  });
}

int rl_evaluate(const char* ground_truth_json, const char* predictions_json, const char* unit_costs_json,
                char** out_json) {
  return guard([&] {
    need(ground_truth_json, "ground_truth_json");
    need(predictions_json, "predictions_json");
    need(out_json, "out_json");
    const auto gt = document_from_json(parse_json(ground_truth_json, "ground truth"));
    const auto preds = predictions_from_json(parse_json(predictions_json, "predictions"));
    const UnitCosts costs =
        unit_costs_json ? unit_costs_from_json(parse_json(unit_costs_json, "unit costs")) : UnitCosts{};
    emit(out_json, evaluate_to_json(ground_truth_from(gt), preds, costs));
  });
}

int rl_precision_recall_f1(int64_t tp, int64_t fp, int64_t fn, rl_prf1* out) {
  return guard([&] {
    need(out, "out");
    const auto m = precision_recall_f1(tp, fp, fn);
    *out = rl_prf1{m.precision.has_value(), m.precision.value_or(0), m.recall.has_value(),
                   m.recall.value_or(0),    m.f1.has_value(),        m.f1.value_or(0)};
  });
}

void rl_default_unit_costs(rl_unit_costs* out) {
  if (!out) return;
  const UnitCosts d;
  *out = {d.removal_s, d.addition_s, d.adjustment_s, d.label_s};
}

int rl_workload_seconds(const rl_workload_counts* counts, const rl_unit_costs* costs, double* out_total_s) {
  return guard([&] {
    need(counts, "counts");
    need(out_total_s, "out_total_s");
    UnitCosts c;
    if (costs) c = {costs->removal_s, costs->addition_s, costs->adjustment_s, costs->label_s};
    const WorkloadCounts n{counts->removals, counts->additions, counts->adjustments, counts->labels};
    *out_total_s = workload_estimate(n, c).total_s;
  });
}

int rl_unidentified_rate(int64_t total, int64_t identified, double* out_percent) {
  return guard([&] {
    need(out_percent, "out_percent");
    *out_percent = unidentified_rate(total, identified);
  });
}

int rl_runner_db_open(const char* const* csv_paths, size_t n_paths, const char* checkpoints_csv,
                      rl_runner_db** out) {
  return guard([&] {
    need(out, "out");
    if (n_paths && !csv_paths) throw Error(ErrorCode::kInvalidArgument, "csv_paths must not be NULL");
    auto db = std::make_unique<rl_runner_db>();
    std::set<std::int64_t> bibs;
    for (size_t i = 0; i < n_paths; ++i) {
      need(csv_paths[i], "csv path");
      for (auto& r : load_runner_csv(csv_paths[i])) {
        if (!bibs.insert(r.bib).second) {
          throw Error(ErrorCode::kDuplicateBib, "bib " + std::to_string(r.bib) + " appears in more than one file");
        }
        db->runners.push_back(std::move(r));
      }
    }
    const auto cps = checkpoints_csv ? load_checkpoints_csv(checkpoints_csv) : default_checkpoints();
    db->timelines = compute_timelines(db->runners, cps);
    *out = db.release();
  });
}

void rl_runner_db_close(rl_runner_db* db) { delete db; }
size_t rl_runner_db_size(const rl_runner_db* db) { return db ? db->runners.size() : 0; }

int rl_runner_db_search(const rl_runner_db* db, const char* fragment, int field, char** out_json) {
  return guard([&] {
    need(db, "db");
    need(fragment, "fragment");
    need(out_json, "out_json");
    SearchField f;
    switch (field) {
      case RL_SEARCH_ANY: f = SearchField::kAny; break;
      case RL_SEARCH_NAME: f = SearchField::kName; break;
      case RL_SEARCH_BIB: f = SearchField::kBib; break;
      default: throw Error(ErrorCode::kInvalidArgument, "unknown search field " + std::to_string(field));
    }
    Json out = Json::array();
    for (const auto& r : partial_search(db->runners, fragment, f)) out.push_back(runner_to_json(r));
    emit(out_json, out);
  });
}

int rl_runner_db_timeline(const rl_runner_db* db, int64_t bib, char** out_json) {
  return guard([&] {
    need(db, "db");
    need(out_json, "out_json");
    for (const auto& t : db->timelines) {
      if (t.bib == bib) return emit(out_json, timeline_to_json(t));
    }
    throw Error(ErrorCode::kNotFound, "no timeline for bib " + std::to_string(bib));
  });
}

int rl_runner_db_timelines_csv(const rl_runner_db* db, char** out_csv) {
  return guard([&] {
    need(db, "db");
    need(out_csv, "out_csv");
    emit(out_csv, write_timelines_csv(db->timelines));
  });
}

int rl_runner_db_window(const rl_runner_db* db, int location, double t_s, double delta_s, int64_t** out_bibs,
                        size_t* out_len) {
  return guard([&] {
    need(db, "db");
    need(out_bibs, "out_bibs");
    need(out_len, "out_len");
    const auto bibs = time_window_query(db->timelines, location, t_s, delta_s);
    emit_array(bibs, out_bibs, out_len);
  });
}

int rl_id_counter_new(const char* state_json, rl_id_counter** out) {
  return guard([&] {
    need(out, "out");
    auto c = std::make_unique<rl_id_counter>();
    if (state_json) c->counter = UniqueIdCounter::from_json(parse_json(state_json, "counter state"));
    *out = c.release();
  });
}

void rl_id_counter_free(rl_id_counter* c) { delete c; }

int rl_id_counter_next(rl_id_counter* c, int location, char** out_identity) {
  return guard([&] {
    need(c, "counter");
    need(out_identity, "out_identity");
    std::lock_guard lock(c->mutex);
    emit(out_identity, c->counter.next(location).str());
  });
}

int rl_id_counter_state(const rl_id_counter* c, char** out_json) {
  return guard([&] {
    need(c, "counter");
    need(out_json, "out_json");
    std::lock_guard lock(c->mutex);
    emit(out_json, c->counter.to_json());
  });
}

int rl_gallery_load(const char* path, rl_gallery** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new rl_gallery{load_gallery(path)};
  });
}

int rl_gallery_parse(const char* gallery_json, rl_gallery** out) {
  return guard([&] {
    need(gallery_json, "gallery_json");
    need(out, "out");
    *out = new rl_gallery{parse_gallery(parse_json(gallery_json, "gallery"))};
  });
}

void rl_gallery_free(rl_gallery* g) { delete g; }
size_t rl_gallery_size(const rl_gallery* g) { return g ? g->images.size() : 0; }

int rl_gallery_feature(const rl_gallery* g, const char* image_id, double** out, size_t* out_dim) {
  return guard([&] {
    need(g, "gallery");
    need(image_id, "image_id");
    need(out, "out");
    need(out_dim, "out_dim");
    for (const auto& img : g->images) {
      if (img.image_id == image_id) return emit_array(img.feature, out, out_dim);
    }
    throw Error(ErrorCode::kNotFound, std::string("gallery has no image '") + image_id + "'");
  });
}

int rl_gallery_rank(const rl_gallery* g, const double* probe, size_t dim, size_t k, char** out_json) {
  return guard([&] {
    need(g, "gallery");
    need(out_json, "out_json");
    if (dim && !probe) throw Error(ErrorCode::kInvalidArgument, "probe must not be NULL");
    emit(out_json, ranking_to_json(reid_rank(g->images, {probe, dim}, k)));
  });
}

int rl_gallery_rank_image(const rl_gallery* g, const uint8_t* bytes, size_t len, size_t k, char** out_json) {
  return guard([&] {
    need(g, "gallery");
    need(bytes, "bytes");
    need(out_json, "out_json");
    const auto probe = baseline_embed(std::span<const std::uint8_t>(bytes, len));
    emit(out_json, ranking_to_json(reid_rank(g->images, probe, k)));
  });
}

int rl_embed_image(const uint8_t* bytes, size_t len, double** out, size_t* out_dim) {
  return guard([&] {
    need(bytes, "bytes");
    need(out, "out");
    need(out_dim, "out_dim");
    emit_array(baseline_embed(std::span<const std::uint8_t>(bytes, len)), out, out_dim);
  });
}

void rl_service_config_init(rl_service_config* config) {
  if (!config) return;
  *config = {nullptr, -1, nullptr, -1.0, 0};
}

int rl_service_create(const rl_service_config* config, rl_service** out) {
  return guard([&] {
    need(out, "out");
    auto cfg = config_from_env();
    if (config) {
      if (config->host) cfg.host = config->host;
      if (config->port >= 0) cfg.port = config->port;
      if (config->data_root) cfg.data_root = config->data_root;
      if (config->delta_t_default >= 0) cfg.delta_t_default = config->delta_t_default;
      if (config->reid_top_k > 0) cfg.reid_top_k = config->reid_top_k;
    }
    if (cfg.port > 65535) throw Error(ErrorCode::kInvalidArgument, "port out of range");
    if (cfg.data_root.empty()) throw Error(ErrorCode::kMissingDataRoot, "no data root given (flag or DATA_ROOT)");
    *out = new rl_service{std::make_unique<Service>(std::move(cfg))};
  });
}

int rl_service_start(rl_service* s) {
  return guard([&] {
    need(s, "service");
    s->service->start();
  });
}

int rl_service_port(const rl_service* s) { return s ? s->service->port() : -1; }

int rl_service_wait(rl_service* s) {
  return guard([&] {
    need(s, "service");
    s->service->wait();
  });
}

int rl_service_stop(rl_service* s) {
  return guard([&] {
    need(s, "service");
    s->service->stop();
  });
}

void rl_service_destroy(rl_service* s) { delete s; }

}  // extern "C"
