#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "alignment/timeline.hpp"
#include "ingest/runners.hpp"

namespace runlabel {

enum class SearchField { kAny, kName, kBib };

/// Case-insensitive substring match on the name and/or substring match on the
/// decimal bib; results ordered by bib. Throws Error(kInvalidArgument) for an
/// empty fragment.
std::vector<RunnerRecord> partial_search(const std::vector<RunnerRecord>& records, std::string_view fragment,
                                         SearchField field = SearchField::kAny);

/// Bibs whose estimated passing time at `location_number` lies in
/// [t - delta, t + delta], ordered by passing time then bib.
/// Errors: kUnknownLocation (outside 1..42), kInvalidArgument (delta < 0).
std::vector<std::int64_t> time_window_query(const std::vector<Timeline>& timelines, int location_number,
                                            double t_s, double delta_s);

inline constexpr double kDefaultWindowS = 60;

}  // namespace runlabel
