// Command-line front end over the runlabel C API.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <signal.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "runlabel.h"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

// A failed step; carries the exit code.
struct Failure {
  int exit_code;
  std::string message;
};

[[noreturn]] void io_failure(const std::string& message) { throw Failure{kExitIo, message}; }
[[noreturn]] void validation_failure(const std::string& message) { throw Failure{kExitValidation, message}; }

void check(int status) {
  if (status == RL_OK) return;
  std::string msg = std::string(rl_status_name(status)) + ": " + rl_last_error();
  throw Failure{status == RL_E_IO ? kExitIo : kExitValidation, msg};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_failure("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) io_failure("error reading " + path);
  return ss.str();
}

Json parse(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    validation_failure(what + " is not valid JSON: " + e.what());
  }
}

// Owns a string handed out by the library.
std::string take(char* p) {
  std::string s = p ? p : "";
  rl_free(p);
  return s;
}

std::vector<std::int64_t> take(std::int64_t* p, std::size_t n) {
  std::vector<std::int64_t> v(p, p + n);
  rl_free(p);
  return v;
}

struct Output {
  std::string path;  // empty: stdout
  bool pretty = false;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      std::cout.flush();
      if (!std::cout) io_failure("cannot write to stdout");
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) io_failure("cannot write " + path);
    out << text;
    if (!out) io_failure("error writing " + path);
  }
  void write(const Json& j) const { write(j.dump(2) + "\n"); }
};

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("--out", out.path, "Write the result to this file instead of stdout");
  cmd->add_flag("--pretty", out.pretty, "Human-readable table instead of JSON");
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

std::string metric(const Json& j) { return j.is_null() ? "n/a" : fmt(j.get<double>()); }

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Failures are rethrown
// in index order.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  std::vector<std::optional<Failure>> failures(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        fn(i);
      } catch (const Failure& f) {
        failures[i] = f;
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::max(1, jobs));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(threads, n); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& f : failures) {
    if (f) throw *f;
  }
}

struct RunnerDb {
  rl_runner_db* db = nullptr;
  RunnerDb(const std::vector<std::string>& csvs, const std::string& checkpoints) {
    std::vector<const char*> paths;
    for (const auto& c : csvs) paths.push_back(c.c_str());
    check(rl_runner_db_open(paths.data(), paths.size(), checkpoints.empty() ? nullptr : checkpoints.c_str(), &db));
  }
  ~RunnerDb() { rl_runner_db_close(db); }
  RunnerDb(const RunnerDb&) = delete;
  RunnerDb& operator=(const RunnerDb&) = delete;
};

// ---- ingest ----

struct IngestArgs {
  std::string manifest;
  std::vector<std::string> annotations;
  Output out;
};

int run_ingest(const IngestArgs& a) {
  const auto manifest_text = read_file(a.manifest);
  auto result = parse(take([&] {
                        char* s = nullptr;
                        check(rl_ingest_manifest(manifest_text.c_str(), &s));
                        return s;
                      }()),
                      "ingest result");

  bool clean = true;
  if (!a.annotations.empty()) {
    std::map<std::string, Json> by_id;
    for (const auto& v : result["videos"]) by_id[v["video_id"].get<std::string>()] = v;
    Json validation = Json::object();
    for (const auto& path : a.annotations) {
      const auto text = read_file(path);
      const auto doc = parse(text, path);
      const auto id = doc.value("video_id", std::string());
      auto it = by_id.find(id);
      if (it == by_id.end()) validation_failure(path + ": video '" + id + "' is not in the manifest");
      char* s = nullptr;
      check(rl_validate_annotation(text.c_str(), it->second.dump().c_str(), &s));
      auto problems = parse(take(s), "validation")["problems"];
      if (!problems.empty()) clean = false;
      validation[id] = std::move(problems);
    }
    result["validation"] = std::move(validation);
  }

  if (a.out.pretty) {
    const auto& st = result["stats"];
    std::ostringstream ss;
    ss << "videos            " << st["count"] << "\n"
       << "total duration h  " << fmt(st["total_duration_h"].get<double>(), 2) << "\n"
       << "mean duration s   " << fmt(st["mean_duration_s"].get<double>(), 2) << "\n"
       << "std duration s    " << fmt(st["std_duration_s"].get<double>(), 2) << "\n"
       << "total frames      " << st["total_frames"] << "\n";
    if (result.contains("validation")) {
      for (const auto& [id, problems] : result["validation"].items()) {
        ss << id << ": " << (problems.empty() ? "ok" : std::to_string(problems.size()) + " problem(s)") << "\n";
        for (const auto& p : problems) ss << "  " << p.get<std::string>() << "\n";
      }
    }
    a.out.write(ss.str());
  } else {
    a.out.write(result);
  }
  if (!clean) validation_failure("annotation documents do not fit their videos");
  return 0;
}

// ---- subsample ----

struct SubsampleArgs {
  std::optional<std::int64_t> frames;
  std::string frames_dir;
  int fps = 0;
  Output out;
};

int run_subsample(const SubsampleArgs& a) {
  std::int64_t count = 0;
  if (a.frames) {
    count = *a.frames;
  } else {
    check(rl_frame_dir_count(a.frames_dir.c_str(), &count));
  }
  std::int64_t* idx = nullptr;
  std::size_t n = 0;
  check(rl_subsample_frames(count, a.fps, &idx, &n));
  const auto indices = take(idx, n);
  if (a.out.pretty) {
    std::ostringstream ss;
    ss << indices.size() << " of " << count << " frames at " << a.fps << " fps\n";
    for (auto i : indices) ss << i << "\n";
    a.out.write(ss.str());
  } else {
    a.out.write(Json{{"frame_count", count}, {"fps", a.fps}, {"count", indices.size()}, {"indices", indices}});
  }
  return 0;
}

// ---- sample-locations ----

struct SampleArgs {
  std::string scores;
  int k = 6;
  double c_alpha = 1.63;
  std::uint64_t seed = 0;
  int iterations = 10000;
  bool exhaustive = false;
  Output out;
};

int run_sample_locations(const SampleArgs& a) {
  const auto csv = read_file(a.scores);
  char* s = nullptr;
  check(rl_sample_locations(csv.c_str(), a.k, a.c_alpha, a.seed, a.iterations, a.exhaustive ? 1 : 0, &s));
  const auto result = parse(take(s), "selection");
  if (a.out.pretty) {
    std::ostringstream ss;
    auto join = [](const Json& arr) {
      std::string out;
      for (const auto& v : arr) out += (out.empty() ? "" : ", ") + v.dump();
      return out;
    };
    ss << "scores     " << join(result["subset"]) << "\n"
       << "locations  " << join(result["locations"]) << "\n"
       << "D          " << fmt(result["statistic"].get<double>()) << "\n"
       << "D_alpha    " << fmt(result["critical_value"].get<double>()) << "\n"
       << "accepted   " << (result["accepted"].get<bool>() ? "yes" : "no") << "\n"
       << "evaluated  " << result["candidates_evaluated"] << "\n";
    a.out.write(ss.str());
  } else {
    a.out.write(result);
  }
  return 0;
}

// ---- interpolate ----

struct InterpolateArgs {
  std::string keyframes;
  bool round = false;
  int jobs = 1;
  Output out;
};

Json interpolate_one(const Json& keyframes_or_track, bool round) {
  char* s = nullptr;
  check(rl_interpolate(keyframes_or_track.dump().c_str(), round ? 1 : 0, &s));
  return parse(take(s), "interpolation");
}

void print_boxes(std::ostringstream& ss, const Json& boxes) {
  ss << std::setw(8) << "frame" << std::setw(12) << "x_min" << std::setw(12) << "y_min" << std::setw(12)
     << "x_max" << std::setw(12) << "y_max" << "\n";
  for (const auto& b : boxes) {
    ss << std::setw(8) << b["frame_index"].get<std::int64_t>();
    for (const auto& c : b["box"]) ss << std::setw(12) << fmt(c.get<double>(), 2);
    ss << "\n";
  }
}

int run_interpolate(const InterpolateArgs& a) {
  const auto input = parse(read_file(a.keyframes), a.keyframes);
  Json result;
  if (input.is_object() && input.contains("tracks")) {
    const auto& tracks = input["tracks"];
    if (!tracks.is_array()) validation_failure("'tracks' must be a list");
    std::vector<Json> dense(tracks.size());
    parallel_for(tracks.size(), a.jobs, [&](std::size_t i) { dense[i] = interpolate_one(tracks[i], a.round); });
    Json out_tracks = Json::array();
    for (std::size_t i = 0; i < tracks.size(); ++i) {
      out_tracks.push_back({{"identity", tracks[i].value("identity", Json())}, {"boxes", std::move(dense[i])}});
    }
    result = {{"video_id", input.value("video_id", Json())}, {"tracks", std::move(out_tracks)}};
  } else {
    result = interpolate_one(input, a.round);
  }

  if (a.out.pretty) {
    std::ostringstream ss;
    if (result.is_array()) {
      print_boxes(ss, result);
    } else {
      for (const auto& t : result["tracks"]) {
        ss << "identity " << t["identity"].get<std::string>() << "\n";
        print_boxes(ss, t["boxes"]);
      }
    }
    a.out.write(ss.str());
  } else {
    a.out.write(result);
  }
  return 0;
}

// ---- link ----

struct LinkArgs {
  std::string paths;
  std::string detections;
  Output out;
};

int run_link(const LinkArgs& a) {
  const auto paths = read_file(a.paths);
  const auto dets = read_file(a.detections);
  char* s = nullptr;
  check(rl_link(paths.c_str(), dets.c_str(), &s));
  const auto result = parse(take(s), "link result");
  if (a.out.pretty) {
    std::ostringstream ss;
    ss << "kept " << result["detections"].size() << " detection(s), " << result["ambiguities"].size()
       << " ambiguous\n";
    for (std::size_t i = 0; i < result["detections"].size(); ++i) {
      const auto& d = result["detections"][i];
      ss << "  #" << result["source_index"][i] << " frame " << d["frame_index"] << " label "
         << (d.contains("label") ? d["label"].get<std::string>() : std::string("-")) << "\n";
    }
    for (const auto& amb : result["ambiguities"]) {
      ss << "  ambiguous #" << amb["detection_index"] << " frame " << amb["frame_index"] << ": "
         << amb["identities"].dump() << "\n";
    }
    a.out.write(ss.str());
  } else {
    a.out.write(result);
  }
  return 0;
}

// ---- evaluate ----

struct EvaluateArgs {
  std::string gt;
  std::string pred;
  std::string unit_costs;
  int jobs = 1;
  Output out;
};

Json evaluate_one(const std::string& gt_path, const std::string& pred_path, const std::string& costs) {
  const auto gt = read_file(gt_path);
  const auto pred = read_file(pred_path);
  char* s = nullptr;
  check(rl_evaluate(gt.c_str(), pred.c_str(), costs.empty() ? nullptr : costs.c_str(), &s));
  return parse(take(s), "evaluation");
}

Json summary_of(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
  rl_prf1 m{};
  check(rl_precision_recall_f1(tp, fp, fn, &m));
  auto r4 = [](int has, double v) { return has ? Json(std::round(v * 1e4) / 1e4) : Json(nullptr); };
  return {{"tp", tp},
          {"fp", fp},
          {"fn", fn},
          {"precision", r4(m.has_precision, m.precision)},
          {"recall", r4(m.has_recall, m.recall)},
          {"f1", r4(m.has_f1, m.f1)}};
}

int run_evaluate(const EvaluateArgs& a) {
  const std::string costs = a.unit_costs.empty() ? std::string() : read_file(a.unit_costs);
  Json result;
  if (fs::is_directory(a.gt)) {
    if (!fs::is_directory(a.pred)) validation_failure("--gt is a directory, so --pred must be one too");
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(a.gt)) {
      if (e.is_regular_file() && e.path().extension() == ".json") names.push_back(e.path().filename().string());
    }
    std::sort(names.begin(), names.end());
    for (const auto& n : names) {
      if (!fs::exists(fs::path(a.pred) / n)) io_failure("no predictions for " + n + " in " + a.pred);
    }
    std::vector<Json> reports(names.size());
    parallel_for(names.size(), a.jobs, [&](std::size_t i) {
      reports[i] = evaluate_one((fs::path(a.gt) / names[i]).string(), (fs::path(a.pred) / names[i]).string(), costs);
    });
    Json videos = Json::object();
    std::int64_t tp = 0, fp = 0, fn = 0;
    double workload = 0;
    for (std::size_t i = 0; i < names.size(); ++i) {
      tp += reports[i]["tp"].get<std::int64_t>();
      fp += reports[i]["fp"].get<std::int64_t>();
      fn += reports[i]["fn"].get<std::int64_t>();
      workload += reports[i]["workload"]["total_s"].get<double>();
      videos[fs::path(names[i]).stem().string()] = std::move(reports[i]);
    }
    auto total = summary_of(tp, fp, fn);
    total["workload_total_s"] = workload;
    result = {{"videos", std::move(videos)}, {"total", std::move(total)}};
  } else {
    result = evaluate_one(a.gt, a.pred, costs);
  }

  if (a.out.pretty) {
    std::ostringstream ss;
    auto row = [&](const std::string& name, const Json& r) {
      ss << std::left << std::setw(24) << name << std::right << std::setw(8) << r["tp"] << std::setw(8) << r["fp"]
         << std::setw(8) << r["fn"] << std::setw(11) << metric(r["precision"]) << std::setw(11)
         << metric(r["recall"]) << std::setw(11) << metric(r["f1"]) << "\n";
    };
    ss << std::left << std::setw(24) << "video" << std::right << std::setw(8) << "tp" << std::setw(8) << "fp"
       << std::setw(8) << "fn" << std::setw(11) << "precision" << std::setw(11) << "recall" << std::setw(11)
       << "f1" << "\n";
    if (result.contains("videos")) {
      for (const auto& [id, r] : result["videos"].items()) row(id, r);
      row("total", result["total"]);
    } else {
      row(fs::path(a.gt).stem().string(), result);
      ss << "workload " << fmt(result["workload"]["total_s"].get<double>(), 1) << " s\n";
    }
    a.out.write(ss.str());
  } else {
    a.out.write(result);
  }
  return 0;
}

// ---- timeline / align-query ----

struct TimelineArgs {
  std::vector<std::string> runners;
  std::string checkpoints;
  std::optional<std::int64_t> bib;
  Output out;
};

int run_timeline(const TimelineArgs& a) {
  RunnerDb db(a.runners, a.checkpoints);
  if (!a.bib) {
    char* s = nullptr;
    check(rl_runner_db_timelines_csv(db.db, &s));
    a.out.write(take(s));
    return 0;
  }
  char* s = nullptr;
  check(rl_runner_db_timeline(db.db, *a.bib, &s));
  const auto tl = parse(take(s), "timeline");
  if (a.out.pretty) {
    std::ostringstream ss;
    ss << "bib " << tl["bib"] << "\n" << std::setw(10) << "location" << std::setw(12) << "km" << std::setw(14)
       << "passing s" << "\n";
    for (const auto& e : tl["entries"]) {
      ss << std::setw(10) << e["location_number"] << std::setw(12) << fmt(e["distance_km"].get<double>(), 1)
         << std::setw(14) << fmt(e["estimated_passing_s"].get<double>(), 1) << "\n";
    }
    a.out.write(ss.str());
  } else {
    a.out.write(tl);
  }
  return 0;
}

struct AlignArgs {
  std::vector<std::string> runners;
  std::string checkpoints;
  int location = 0;
  double t = 0;
  double dt = 60;
  Output out;
};

int run_align_query(const AlignArgs& a) {
  RunnerDb db(a.runners, a.checkpoints);
  std::int64_t* p = nullptr;
  std::size_t n = 0;
  check(rl_runner_db_window(db.db, a.location, a.t, a.dt, &p, &n));
  const auto bibs = take(p, n);
  if (a.out.pretty) {
    std::ostringstream ss;
    ss << bibs.size() << " runner(s) at location " << a.location << " within " << a.t << " +/- " << a.dt << " s\n";
    for (auto b : bibs) ss << b << "\n";
    a.out.write(ss.str());
  } else {
    a.out.write(Json{{"location", a.location}, {"t", a.t}, {"dt", a.dt}, {"bibs", bibs}});
  }
  return 0;
}

// ---- reid-rank ----

struct ReidArgs {
  std::string gallery;
  std::string probe_id;
  std::string probe_feature;
  std::string probe_image;
  std::size_t k = 20;
  Output out;
};

int run_reid_rank(const ReidArgs& a) {
  rl_gallery* g = nullptr;
  check(rl_gallery_load(a.gallery.c_str(), &g));
  std::unique_ptr<rl_gallery, decltype(&rl_gallery_free)> owner(g, rl_gallery_free);

  char* s = nullptr;
  if (!a.probe_image.empty()) {
    const auto bytes = read_file(a.probe_image);
    check(rl_gallery_rank_image(g, reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size(), a.k, &s));
  } else {
    std::vector<double> probe;
    if (!a.probe_id.empty()) {
      double* f = nullptr;
      std::size_t dim = 0;
      check(rl_gallery_feature(g, a.probe_id.c_str(), &f, &dim));
      probe.assign(f, f + dim);
      rl_free(f);
    } else {
      const auto j = parse(read_file(a.probe_feature), a.probe_feature);
      try {
        probe = (j.is_object() ? j.at("feature") : j).get<std::vector<double>>();
      } catch (const Json::exception& e) {
        validation_failure(a.probe_feature + ": expected a list of numbers or {\"feature\": [...]}");
      }
    }
    check(rl_gallery_rank(g, probe.data(), probe.size(), a.k, &s));
  }
  const auto ranking = parse(take(s), "ranking");
  if (a.out.pretty) {
    std::ostringstream ss;
    int rank = 1;
    for (const auto& r : ranking) {
      ss << std::setw(4) << rank++ << "  " << std::left << std::setw(32) << r["image_id"].get<std::string>()
         << std::right << fmt(r["distance"].get<double>(), 6) << "\n";
    }
    a.out.write(ss.str());
  } else {
    a.out.write(ranking);
  }
  return 0;
}

// ---- serve ----

struct ServeArgs {
  std::string host;
  int port = -1;
  std::string data_root;
  double delta_t = -1;
  int reid_top_k = 0;
};

int run_serve(const ServeArgs& a) {
  rl_service_config cfg;
  rl_service_config_init(&cfg);
  if (!a.host.empty()) cfg.host = a.host.c_str();
  cfg.port = a.port;
  if (!a.data_root.empty()) cfg.data_root = a.data_root.c_str();
  cfg.delta_t_default = a.delta_t;
  cfg.reid_top_k = a.reid_top_k;

  // Block the stop signals before any server thread exists so only sigwait
  // below sees them.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

  rl_service* svc = nullptr;
  check(rl_service_create(&cfg, &svc));
  std::unique_ptr<rl_service, decltype(&rl_service_destroy)> owner(svc, rl_service_destroy);
  check(rl_service_start(svc));
  std::cout << Json{{"listening", rl_service_port(svc)}}.dump() << std::endl;

  int sig = 0;
  sigwait(&stop_signals, &sig);
  check(rl_service_stop(svc));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Marathon runner video annotation toolkit"};
  app.name("runlabel");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rl_version()));

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Validate a video manifest and print dataset statistics");
  c_ingest->add_option("--manifest", ingest.manifest, "Video manifest JSON")->required()->check(CLI::ExistingFile);
  c_ingest->add_option("--annotations", ingest.annotations,
                       "Annotation documents to check against the manifest (repeatable)")
      ->check(CLI::ExistingFile);
  add_output(c_ingest, ingest.out);

  SubsampleArgs sub;
  auto* c_sub = app.add_subcommand("subsample", "Frame indices kept when sampling 30 fps video at a lower rate");
  auto* o_frames = c_sub->add_option("--frames", sub.frames, "Number of frames in the video")->check(CLI::NonNegativeNumber);
  auto* o_dir = c_sub->add_option("--frames-dir", sub.frames_dir, "Frame directory containing frames.txt")
                    ->check(CLI::ExistingDirectory);
  o_frames->excludes(o_dir);
  o_dir->excludes(o_frames);
  c_sub->add_option("--fps", sub.fps, "Target frame rate; must divide 30")->required();
  add_output(c_sub, sub.out);

  SampleArgs sample;
  auto* c_sample = app.add_subcommand("sample-locations",
                                      "Pick k location scores whose distribution matches all scores (KS test)");
  c_sample->add_option("--scores", sample.scores, "Location scores CSV")->required()->check(CLI::ExistingFile);
  c_sample->add_option("--k", sample.k, "Number of locations to pick")->capture_default_str();
  c_sample->add_option("--c-alpha", sample.c_alpha, "KS coefficient c(alpha)")->capture_default_str();
  c_sample->add_option("--seed", sample.seed, "Random seed")->capture_default_str();
  c_sample->add_option("--iterations", sample.iterations, "Random subsets to try")->capture_default_str();
  c_sample->add_flag("--exhaustive", sample.exhaustive, "Evaluate every subset instead of sampling");
  add_output(c_sample, sample.out);

  InterpolateArgs interp;
  auto* c_interp = app.add_subcommand("interpolate", "Densify keyframe boxes by linear interpolation");
  c_interp->add_option("--keyframes", interp.keyframes, "Keyframes list, track, or annotation document JSON")
      ->required()
      ->check(CLI::ExistingFile);
  c_interp->add_flag("--round", interp.round, "Round exported corners half-up to integers");
  c_interp->add_option("--jobs", interp.jobs, "Worker threads for multi-track documents")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_output(c_interp, interp.out);

  LinkArgs link;
  auto* c_link = app.add_subcommand("link", "Keep detections that contain a runner's path point");
  c_link->add_option("--paths", link.paths, "Path-supervision JSON")->required()->check(CLI::ExistingFile);
  c_link->add_option("--detections", link.detections, "Detections JSON")->required()->check(CLI::ExistingFile);
  add_output(c_link, link.out);

  EvaluateArgs eval;
  auto* c_eval = app.add_subcommand("evaluate", "Score predictions against ground truth (IoU >= 0.8)");
  c_eval->add_option("--gt", eval.gt, "Ground-truth annotation document, or a directory of them")
      ->required()
      ->check(CLI::ExistingPath);
  c_eval->add_option("--pred", eval.pred, "Detections list or annotation document, or a directory of them")
      ->required()
      ->check(CLI::ExistingPath);
  c_eval->add_option("--unit-costs", eval.unit_costs, "JSON with removal/addition/adjustment/label seconds")
      ->check(CLI::ExistingFile);
  c_eval->add_option("--jobs", eval.jobs, "Worker threads when evaluating directories")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_output(c_eval, eval.out);

  TimelineArgs tl;
  auto* c_tl = app.add_subcommand("timeline", "Estimated passing times at each camera location");
  c_tl->add_option("--runners", tl.runners, "Results CSV (repeatable)")->required()->check(CLI::ExistingFile);
  c_tl->add_option("--checkpoints", tl.checkpoints, "CSV location_number,distance_km")->check(CLI::ExistingFile);
  c_tl->add_option("--bib", tl.bib, "Only this runner (JSON output)");
  add_output(c_tl, tl.out);

  AlignArgs align;
  auto* c_align = app.add_subcommand("align-query", "Bibs expected at a location around a video time");
  c_align->add_option("--runners", align.runners, "Results CSV (repeatable)")->required()->check(CLI::ExistingFile);
  c_align->add_option("--checkpoints", align.checkpoints, "CSV location_number,distance_km")
      ->check(CLI::ExistingFile);
  c_align->add_option("--location", align.location, "Location number 1..42")->required();
  c_align->add_option("--t", align.t, "Time since the race start, seconds")->required();
  c_align->add_option("--dt", align.dt, "Half-width of the window, seconds")->capture_default_str();
  add_output(c_align, align.out);

  ReidArgs reid;
  auto* c_reid = app.add_subcommand("reid-rank", "Rank gallery images by feature distance to a probe");
  c_reid->add_option("--gallery", reid.gallery, "Gallery features JSON")->required()->check(CLI::ExistingFile);
  auto* p_id = c_reid->add_option("--probe-id", reid.probe_id, "Use this gallery image as the probe");
  auto* p_feat = c_reid->add_option("--probe-feature", reid.probe_feature, "JSON feature vector")
                     ->check(CLI::ExistingFile);
  auto* p_img = c_reid->add_option("--probe-image", reid.probe_image, "Image file, embedded with the baseline feature")
                    ->check(CLI::ExistingFile);
  p_id->excludes(p_feat)->excludes(p_img);
  p_feat->excludes(p_id)->excludes(p_img);
  p_img->excludes(p_id)->excludes(p_feat);
  c_reid->add_option("--k", reid.k, "Number of results")->capture_default_str()->check(CLI::PositiveNumber);
  add_output(c_reid, reid.out);

  ServeArgs serve;
  auto* c_serve = app.add_subcommand("serve", "Run the annotation HTTP service");
  c_serve->add_option("--host", serve.host, "Bind address (default 127.0.0.1)");
  c_serve->add_option("--port", serve.port, "Port; 0 picks a free one (env PORT, default 8080)");
  c_serve->add_option("--data-root", serve.data_root, "Data directory (env DATA_ROOT)");
  c_serve->add_option("--delta-t", serve.delta_t, "Default alignment window, seconds (env DELTA_T_DEFAULT, 60)");
  c_serve->add_option("--reid-top-k", serve.reid_top_k, "Cap on re-id results (env REID_TOP_K, 20)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*c_ingest) return run_ingest(ingest);
    if (*c_sub) {
      if (!sub.frames && sub.frames_dir.empty()) validation_failure("subsample needs --frames or --frames-dir");
      return run_subsample(sub);
    }
    if (*c_sample) return run_sample_locations(sample);
    if (*c_interp) return run_interpolate(interp);
    if (*c_link) return run_link(link);
    if (*c_eval) return run_evaluate(eval);
    if (*c_tl) return run_timeline(tl);
    if (*c_align) return run_align_query(align);
    if (*c_reid) {
      if (reid.probe_id.empty() && reid.probe_feature.empty() && reid.probe_image.empty()) {
        validation_failure("reid-rank needs --probe-id, --probe-feature or --probe-image");
      }
      return run_reid_rank(reid);
    }
    if (*c_serve) return run_serve(serve);
  } catch (const Failure& f) {
    std::cerr << "runlabel: " << f.message << "\n";
    return f.exit_code;
  }
  return kExitValidation;
}
