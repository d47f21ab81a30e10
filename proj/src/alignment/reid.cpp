#include "alignment/reid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"

namespace runlabel {

std::vector<GalleryImage> parse_gallery(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kMalformedDocument, "gallery must be a list");
  std::vector<GalleryImage> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("image_id") || !e["image_id"].is_string() || !e.contains("feature") ||
        !e["feature"].is_array()) {
      throw Error(ErrorCode::kMalformedDocument, "gallery entry needs image_id and feature");
    }
    GalleryImage img;
    img.image_id = e["image_id"].get<std::string>();
    if (auto it = e.find("label"); it != e.end() && !it->is_null()) img.runner_label = identity_from_json(*it);
    for (const auto& v : e["feature"]) {
      if (!v.is_number()) throw Error(ErrorCode::kMalformedDocument, "feature values must be numbers");
      img.feature.push_back(v.get<double>());
    }
    if (!out.empty() && img.feature.size() != out.front().feature.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "gallery image " + img.image_id + " has " +
                                                     std::to_string(img.feature.size()) + " features, expected " +
                                                     std::to_string(out.front().feature.size()));
    }
    out.push_back(std::move(img));
  }
  return out;
}

std::vector<GalleryImage> load_gallery(const std::filesystem::path& path) {
  return parse_gallery(read_json_file(path));
}

Json gallery_to_json(const std::vector<GalleryImage>& gallery) {
  Json out = Json::array();
  for (const auto& g : gallery) {
    Json e = {{"image_id", g.image_id}, {"feature", g.feature}};
    if (g.runner_label) e["label"] = g.runner_label->str();
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<RankedImage> reid_rank(std::span<const GalleryImage> gallery, std::span<const double> probe,
                                   std::size_t k) {
  if (gallery.empty()) throw Error(ErrorCode::kEmptyGallery, "gallery is empty");
  std::vector<double> dist(gallery.size());
  for (std::size_t i = 0; i < gallery.size(); ++i) {
    const auto& f = gallery[i].feature;
    if (f.size() != probe.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "probe has " + std::to_string(probe.size()) +
                                                     " features, gallery has " + std::to_string(f.size()));
    }
    double ss = 0;
    for (std::size_t d = 0; d < f.size(); ++d) ss += (f[d] - probe[d]) * (f[d] - probe[d]);
    dist[i] = std::sqrt(ss);
  }
  std::vector<std::size_t> order(gallery.size());
  std::iota(order.begin(), order.end(), 0);
  const auto n = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                    [&](std::size_t a, std::size_t b) { return dist[a] < dist[b] || (dist[a] == dist[b] && a < b); });
  std::vector<RankedImage> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({gallery[order[i]].image_id, dist[order[i]]});
  return out;
}

Json ranking_to_json(const std::vector<RankedImage>& ranking) {
  Json out = Json::array();
  for (const auto& r : ranking) out.push_back({{"image_id", r.image_id}, {"distance", r.distance}});
  return out;
}

}  // namespace runlabel
