#include "service/server.hpp"

#include <sys/socket.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <mutex>
#include <thread>

#include <httplib.h>

#include "alignment/embed.hpp"
#include "alignment/search.hpp"
#include "core/error.hpp"
#include "core/json_io.hpp"
#include "engine/interpolate.hpp"
#include "engine/linking.hpp"
#include "engine/matching.hpp"
#include "engine/report.hpp"

namespace runlabel {
namespace {

constexpr const char* kJsonType = "application/json";

constexpr const char* kRulesPage = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>Annotation rules</title></head>
<body>
<h1>Annotation rules</h1>
<ul>
<li>Draw a box on keyframes only; frames in between are interpolated linearly per corner.</li>
<li>Add a keyframe wherever the interpolated box drifts off the runner.</li>
<li>A box covers the whole visible body of one runner, tight on all four sides.</li>
<li>Label a runner with the bib number when it is readable in any frame of the video.</li>
<li>Otherwise request a location-scoped identity (LiRj) and reuse it for that runner.</li>
<li>Do not label runners whose bib and appearance are both unresolvable; leave them unlabeled.</li>
<li>If another annotator saved the same track first, reload it and reapply your change.</li>
</ul>
</body></html>
)";

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound:
    case ErrorCode::kEmptyGallery:
      return 404;
    case ErrorCode::kConflict:
      return 409;
    case ErrorCode::kIo:
    case ErrorCode::kInternal:
      return 500;
    default:
      return 400;
  }
}

void send_json(httplib::Response& res, const Json& body, int status = 200) {
  res.status = status;
  res.set_content(to_text(body), kJsonType);
}

void send_error(httplib::Response& res, ErrorCode code, const std::string& message) {
  send_json(res, {{"error", error_name(code)}, {"message", message}}, http_status(code));
}

std::string unquote(std::string s) {
  if (s.rfind("W/", 0) == 0) s.erase(0, 2);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::optional<std::string> if_match(const httplib::Request& req) {
  if (!req.has_header("If-Match")) return std::nullopt;
  return unquote(req.get_header_value("If-Match"));
}

template <class T>
T parse_number(const std::string& text, const char* what) {
  T v{};
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size()) {
    throw Error(ErrorCode::kInvalidArgument, std::string("query parameter '") + what + "' is not a number: '" +
                                                 text + "'");
  }
  return v;
}

template <class T>
std::optional<T> query_number(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  return parse_number<T>(req.get_param_value(key), key);
}

Json body_json(const httplib::Request& req) { return parse_json(req.body, "request body"); }

const Json& require_key(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kMalformedDocument, std::string("request body needs '") + key + "'");
  }
  return j.at(key);
}

std::string content_type_for(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".png") return "image/png";
  if (ext == ".bmp") return "image/bmp";
  return "application/octet-stream";
}

}  // namespace

ServiceConfig config_from_env(ServiceConfig base) {
  auto env = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    return std::string(v);
  };
  if (auto v = env("PORT")) base.port = parse_number<int>(*v, "PORT");
  if (auto v = env("DATA_ROOT")) base.data_root = *v;
  if (auto v = env("DELTA_T_DEFAULT")) base.delta_t_default = parse_number<double>(*v, "DELTA_T_DEFAULT");
  if (auto v = env("REID_TOP_K")) base.reid_top_k = parse_number<int>(*v, "REID_TOP_K");
  if (base.port < 0 || base.port > 65535) throw Error(ErrorCode::kInvalidArgument, "port out of range");
  if (base.delta_t_default < 0) throw Error(ErrorCode::kInvalidArgument, "DELTA_T_DEFAULT must be >= 0");
  if (base.reid_top_k < 1) throw Error(ErrorCode::kInvalidArgument, "REID_TOP_K must be >= 1");
  return base;
}

struct Service::Impl {
  ServiceConfig config;
  AnnotationStore store;
  httplib::Server server;
  std::thread thread;
  std::mutex join_mutex;
  std::atomic<int> bound_port{0};

  void join() {
    std::lock_guard lock(join_mutex);
    if (thread.joinable()) thread.join();
  }

  explicit Impl(ServiceConfig c) : config(std::move(c)), store(config.data_root) {}

  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  // Wraps a handler so library errors become status codes.
  static httplib::Server::Handler guarded(Handler h) {
    return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
      try {
        h(req, res);
      } catch (const Error& e) {
        send_error(res, e.code(), e.what());
      } catch (const nlohmann::json::exception& e) {
        send_error(res, ErrorCode::kMalformedDocument, e.what());
      } catch (const std::exception& e) {
        send_error(res, ErrorCode::kInternal, e.what());
      }
    };
  }

  void routes();
};

void Service::Impl::routes() {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type, If-Match"},
                              {"Access-Control-Expose-Headers", "ETag"},
                              {"Access-Control-Allow-Methods", "GET, PUT, POST, DELETE, OPTIONS"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Get("/videos", guarded([this](const httplib::Request&, httplib::Response& res) {
    Json out = Json::array();
    for (const auto& v : store.videos()) {
      auto j = video_meta_to_json(v);
      j["video_id"] = v.video_id();
      const auto* seq = store.frames(v.video_id());
      j["frame_count"] = seq ? seq->frame_count() : v.frame_count();
      j["frames_available"] = seq != nullptr;
      out.push_back(std::move(j));
    }
    send_json(res, out);
  }));

  server.Get(R"(/videos/([^/]+)/frames/(\d+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    const auto* seq = store.frames(id);
    if (!seq) throw Error(ErrorCode::kNotFound, "no frames for video '" + id + "'");
    const auto path = seq->frame_path(parse_number<std::int64_t>(req.matches[2], "index"));
    const auto bytes = read_text_file(path);
    res.set_content(bytes, content_type_for(path));
  }));

  server.Get(R"(/videos/([^/]+)/frames)", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    const int fps = query_number<int>(req, "fps").value_or(kSourceFps);
    std::int64_t count;
    if (const auto* seq = store.frames(id)) {
      count = seq->frame_count();
    } else if (const auto* meta = store.find_video(id)) {
      count = meta->frame_count();
    } else {
      throw Error(ErrorCode::kNotFound, "unknown video '" + id + "'");
    }
    send_json(res, {{"video_id", id}, {"fps", fps}, {"indices", subsample_frames(count, fps)}});
  }));

  const char* track_route = R"(/videos/([^/]+)/tracks/([^/]+))";

  server.Get(track_route, guarded([this](const httplib::Request& req, httplib::Response& res) {
    const std::string video = req.matches[1];
    const auto identity = Identity::parse(req.matches[2].str());
    auto stored = store.get_track(video, identity);
    if (!stored) throw Error(ErrorCode::kNotFound, "video " + video + " has no track " + identity.str());
    res.set_header("ETag", "\"" + stored->revision + "\"");
    res.set_content(stored->body, kJsonType);
  }));

  server.Put(track_route, guarded([this](const httplib::Request& req, httplib::Response& res) {
    const std::string video = req.matches[1];
    const auto identity = Identity::parse(req.matches[2].str());
    auto j = body_json(req);
    if (!j.is_object()) throw Error(ErrorCode::kMalformedDocument, "track body must be an object");
    if (j.contains("identity")) {
      if (identity_from_json(j.at("identity")) != identity) {
        throw Error(ErrorCode::kInvalidArgument, "body identity does not match the URL");
      }
    } else {
      j["identity"] = identity.str();
    }
    const auto track = track_from_json(j, video);
    auto stored = store.put_track(track, if_match(req));
    res.set_header("ETag", "\"" + stored.revision + "\"");
    res.set_content(stored.body, kJsonType);
  }));

  server.Delete(track_route, guarded([this](const httplib::Request& req, httplib::Response& res) {
    const std::string video = req.matches[1];
    store.delete_track(video, Identity::parse(req.matches[2].str()), if_match(req));
    res.status = 204;
  }));

  server.Get(R"(/videos/([^/]+)/ranges)", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto doc = store.document(req.matches[1]);
    Json ranges = Json::array();
    for (const auto& r : doc.frame_ranges) ranges.push_back(frame_range_to_json(r));
    send_json(res, {{"video_id", doc.video_id}, {"frame_ranges", std::move(ranges)}});
  }));

  server.Post("/interpolate", guarded([](const httplib::Request& req, httplib::Response& res) {
    const auto j = body_json(req);
    const std::string video = j.is_object() ? j.value("video_id", std::string()) : std::string();
    const auto keyframes = keyframes_from_json(require_key(j, "keyframes"), video);
    const bool round_export = j.value("round", false);
    send_json(res, {{"boxes", dense_boxes_to_json(interpolate_keyframes(keyframes), round_export)}});
  }));

  server.Post("/link", guarded([](const httplib::Request& req, httplib::Response& res) {
    const auto j = body_json(req);
    const auto paths = paths_from_json(require_key(j, "paths"));
    const auto dets = detections_from_json(require_key(j, "detections"));
    send_json(res, link_result_to_json(link_paths_to_detections(paths, dets)));
  }));

  server.Post("/evaluate", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto j = body_json(req);
    AnnotationDocument gt_doc;
    if (j.is_object() && j.contains("ground_truth")) {
      gt_doc = document_from_json(j.at("ground_truth"));
    } else if (j.is_object() && j.contains("video_id")) {
      gt_doc = store.document(j.at("video_id").get<std::string>());
    } else {
      throw Error(ErrorCode::kMalformedDocument, "request body needs 'video_id' or 'ground_truth'");
    }
    const auto preds = predictions_from_json(require_key(j, "predictions"));
    const auto costs = j.contains("unit_costs") ? unit_costs_from_json(j.at("unit_costs")) : UnitCosts{};
    send_json(res, evaluate_to_json(ground_truth_from(gt_doc), preds, costs));
  }));

  server.Get("/runners", guarded([this](const httplib::Request& req, httplib::Response& res) {
    std::vector<RunnerRecord> hits = store.runners();
    if (req.has_param("name")) hits = partial_search(hits, req.get_param_value("name"), SearchField::kName);
    if (req.has_param("bib")) hits = partial_search(hits, req.get_param_value("bib"), SearchField::kBib);
    Json out = Json::array();
    for (const auto& r : hits) out.push_back(runner_to_json(r));
    send_json(res, out);
  }));

  server.Get(R"(/runners/(\d+)/timeline)", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto bib = parse_number<std::int64_t>(req.matches[1], "bib");
    if (!store.find_runner(bib)) throw Error(ErrorCode::kNotFound, "unknown bib " + std::to_string(bib));
    const auto* tl = store.find_timeline(bib);
    if (!tl) throw Error(ErrorCode::kNotFound, "bib " + std::to_string(bib) + " has no usable splits");
    send_json(res, timeline_to_json(*tl));
  }));

  server.Get("/alignment", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto location = query_number<int>(req, "location");
    const auto t = query_number<double>(req, "t");
    if (!location || !t) throw Error(ErrorCode::kInvalidArgument, "alignment needs 'location' and 't'");
    const double dt = query_number<double>(req, "dt").value_or(config.delta_t_default);
    const auto bibs = time_window_query(store.timelines(), *location, *t, dt);
    send_json(res, {{"location", *location}, {"t", number_to_json(*t)}, {"dt", number_to_json(dt)}, {"bibs", bibs}});
  }));

  server.Post("/unique-id", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto j = body_json(req);
    const auto& loc = require_key(j, "location");
    if (!loc.is_number_integer()) throw Error(ErrorCode::kMalformedDocument, "'location' must be an integer");
    send_json(res, {{"identity", store.next_unique_id(loc.get<int>()).str()}});
  }));

  server.Post("/reid/query", guarded([this](const httplib::Request& req, httplib::Response& res) {
    std::size_t k = static_cast<std::size_t>(config.reid_top_k);
    std::vector<double> probe;
    const auto type = req.get_header_value("Content-Type");
    if (type.rfind("image/", 0) == 0 || type == "application/octet-stream") {
      const auto* data = reinterpret_cast<const std::uint8_t*>(req.body.data());
      probe = baseline_embed(std::span<const std::uint8_t>(data, req.body.size()));
    } else {
      const auto j = body_json(req);
      probe = require_key(j, "feature").get<std::vector<double>>();
      if (j.contains("k")) k = j.at("k").get<std::size_t>();
    }
    if (auto qk = query_number<long long>(req, "k")) {
      if (*qk < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
      k = static_cast<std::size_t>(*qk);
    }
    k = std::min(k, static_cast<std::size_t>(config.reid_top_k));
    send_json(res, {{"k", k}, {"ranking", ranking_to_json(reid_rank(store.gallery(), probe, k))}});
  }));

  server.Get("/rules", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(kRulesPage, "text/html; charset=utf-8");
  });

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty() && res.status == 404) send_error(res, ErrorCode::kNotFound, "no such route");
  });
}

Service::Service(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) { impl_->routes(); }

Service::~Service() { stop(); }

void Service::start() {
  auto& s = impl_->server;
  // SO_REUSEADDR only: a second listener on a busy port must fail.
  s.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  int port = impl_->config.port;
  if (port == 0) {
    port = s.bind_to_any_port(impl_->config.host);
    if (port < 0) throw Error(ErrorCode::kPortInUse, "could not bind any port on " + impl_->config.host);
  } else if (!s.bind_to_port(impl_->config.host, port)) {
    throw Error(ErrorCode::kPortInUse, "port " + std::to_string(port) + " on " + impl_->config.host + " is in use");
  }
  impl_->bound_port = port;
  impl_->thread = std::thread([&s] { s.listen_after_bind(); });
  s.wait_until_ready();
}

int Service::port() const noexcept { return impl_->bound_port; }

void Service::wait() { impl_->join(); }

void Service::stop() {
  if (!impl_) return;
  impl_->server.stop();
  impl_->join();
}

AnnotationStore& Service::store() noexcept { return impl_->store; }
const ServiceConfig& Service::config() const noexcept { return impl_->config; }

}  // namespace runlabel
