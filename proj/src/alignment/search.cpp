#include "alignment/search.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>

#include "core/error.hpp"
#include "core/identity.hpp"

namespace runlabel {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::vector<RunnerRecord> partial_search(const std::vector<RunnerRecord>& records, std::string_view fragment,
                                         SearchField field) {
  if (fragment.empty()) throw Error(ErrorCode::kInvalidArgument, "search fragment must not be empty");
  const auto needle = lower(fragment);
  std::vector<RunnerRecord> out;
  for (const auto& r : records) {
    const bool by_name = field != SearchField::kBib && lower(r.name).find(needle) != std::string::npos;
    const bool by_bib = field != SearchField::kName && std::to_string(r.bib).find(needle) != std::string::npos;
    if (by_name || by_bib) out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.bib < b.bib; });
  return out;
}

std::vector<std::int64_t> time_window_query(const std::vector<Timeline>& timelines, int location_number,
                                            double t_s, double delta_s) {
  if (location_number < 1 || location_number > kLocationCount) {
    throw Error(ErrorCode::kUnknownLocation, "unknown location " + std::to_string(location_number));
  }
  if (!(delta_s >= 0)) throw Error(ErrorCode::kInvalidArgument, "time window must be non-negative");
  std::vector<std::pair<double, std::int64_t>> hits;
  for (const auto& tl : timelines) {
    const auto t = tl.passing_time(location_number);
    if (t && *t >= t_s - delta_s && *t <= t_s + delta_s) hits.emplace_back(*t, tl.bib);
  }
  std::sort(hits.begin(), hits.end());
  std::vector<std::int64_t> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(h.second);
  return out;
}

}  // namespace runlabel
