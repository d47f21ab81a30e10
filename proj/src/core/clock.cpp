#include "core/clock.hpp"

#include <cstdio>
#include <vector>

#include "core/error.hpp"

namespace runlabel {
namespace {

[[noreturn]] void malformed(std::string_view text, const char* why) {
  throw Error(ErrorCode::kMalformedTime,
              "malformed clock time '" + std::string(text) + "': " + why);
}

int two_digits(std::string_view field, std::string_view text) {
  if (field.size() != 2 || field[0] < '0' || field[0] > '9' || field[1] < '0' || field[1] > '9') {
    malformed(text, "expected two digits");
  }
  return (field[0] - '0') * 10 + (field[1] - '0');
}

}  // namespace

std::int64_t parse_clock_time(std::string_view text) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ':') {
      fields.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (fields.size() == 2) {
    const int mm = two_digits(fields[0], text);
    const int ss = two_digits(fields[1], text);
    if (mm >= 60) malformed(text, "minutes field must be < 60");
    if (ss >= 60) malformed(text, "seconds field must be < 60");
    return mm * 60 + ss;
  }
  if (fields.size() == 3) {
    const auto h = fields[0];
    if (h.empty() || h.size() > 2) malformed(text, "hours must have one or two digits");
    int hh = 0;
    for (char c : h) {
      if (c < '0' || c > '9') malformed(text, "hours must be numeric");
      hh = hh * 10 + (c - '0');
    }
    const int mm = two_digits(fields[1], text);
    const int ss = two_digits(fields[2], text);
    if (mm >= 60) malformed(text, "minutes field must be < 60");
    if (ss >= 60) malformed(text, "seconds field must be < 60");
    return static_cast<std::int64_t>(hh) * 3600 + mm * 60 + ss;
  }
  malformed(text, "expected H:MM:SS or MM:SS");
}

std::string format_clock_time(std::int64_t seconds) {
  if (seconds < 0) {
    throw Error(ErrorCode::kMalformedTime, "negative duration " + std::to_string(seconds));
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld:%02lld:%02lld", static_cast<long long>(seconds / 3600),
                static_cast<long long>(seconds / 60 % 60), static_cast<long long>(seconds % 60));
  return buf;
}

}  // namespace runlabel
