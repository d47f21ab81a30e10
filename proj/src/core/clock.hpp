#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace runlabel {

/// Parses "H:MM:SS", "HH:MM:SS" or "MM:SS" into seconds. Minutes and seconds
/// fields must be two digits below 60. Throws Error(kMalformedTime).
std::int64_t parse_clock_time(std::string_view text);

/// Renders seconds as "H:MM:SS" (hours unpadded).
std::string format_clock_time(std::int64_t seconds);

}  // namespace runlabel
