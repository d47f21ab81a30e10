#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "service/store.hpp"

namespace runlabel {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path data_root;
  double delta_t_default = 60;
  int reid_top_k = 20;
};

/// Overrides `base` with PORT, DATA_ROOT, DELTA_T_DEFAULT and REID_TOP_K when
/// set. Throws Error(kInvalidArgument) for unparseable values.
ServiceConfig config_from_env(ServiceConfig base = {});

/// The annotation HTTP service. Requests are handled on a worker pool.
class Service {
 public:
  /// Loads the data root. Throws Error(kMissingDataRoot).
  explicit Service(ServiceConfig config);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds and starts serving on a background thread; returns once the
  /// socket is listening. Throws Error(kPortInUse).
  void start();
  /// The bound port (useful with port 0). Valid after start().
  int port() const noexcept;
  /// Blocks until stop() is called from elsewhere.
  void wait();
  void stop();

  AnnotationStore& store() noexcept;
  const ServiceConfig& config() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace runlabel
