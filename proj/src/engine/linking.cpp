#include "engine/linking.hpp"

#include <set>
#include <unordered_map>

namespace runlabel {

LinkResult link_paths_to_detections(const PathSet& paths, const std::vector<Detection>& detections) {
  // frame -> (identity, point) for every path point
  std::unordered_map<std::int64_t, std::vector<std::pair<const Identity*, const PathPoint*>>> by_frame;
  for (const auto& [id, points] : paths) {
    for (const auto& p : points) by_frame[p.frame_index].emplace_back(&id, &p);
  }

  LinkResult result;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const auto& det = detections[i];
    auto it = by_frame.find(det.frame.frame_index);
    if (it == by_frame.end()) continue;

    std::set<Identity> inside;
    for (const auto& [id, p] : it->second) {
      if (box_contains_point(det.box, p->x, p->y)) inside.insert(*id);
    }
    if (inside.empty()) continue;

    Detection kept = det;
    if (inside.size() == 1) {
      kept.label = *inside.begin();
    } else {
      kept.label.reset();
      result.ambiguities.push_back({i, det.frame.frame_index, {inside.begin(), inside.end()}});
    }
    result.accepted.push_back(std::move(kept));
    result.source_index.push_back(i);
  }
  return result;
}

}  // namespace runlabel
