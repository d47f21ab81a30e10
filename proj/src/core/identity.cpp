#include "core/identity.hpp"

#include <charconv>

#include "core/error.hpp"

namespace runlabel {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::int64_t to_int(std::string_view digits, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw Error(ErrorCode::kInvalidIdentity, "identity out of range: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Identity Identity::bib(std::int64_t value) {
  if (value <= 0) {
    throw Error(ErrorCode::kInvalidIdentity, "bib must be positive, got " + std::to_string(value));
  }
  return Identity(BibId{value});
}

Identity Identity::unique(int location, std::int64_t runner) {
  if (location < 1 || location > kLocationCount) {
    throw Error(ErrorCode::kInvalidIdentity,
                "location number must be in 1..42, got " + std::to_string(location));
  }
  if (runner < 1) {
    throw Error(ErrorCode::kInvalidIdentity,
                "runner number must be >= 1, got " + std::to_string(runner));
  }
  return Identity(UniqueId{location, runner});
}

Identity Identity::parse(std::string_view text) {
  if (all_digits(text)) {
    // Leading zeros would make rendering non-injective ("042" vs "42").
    if (text.size() > 1 && text.front() == '0') {
      throw Error(ErrorCode::kInvalidIdentity, "bib with leading zero: '" + std::string(text) + "'");
    }
    return bib(to_int(text, text));
  }
  if (text.size() >= 4 && text.front() == 'L') {
    const auto r = text.find('R');
    if (r != std::string_view::npos) {
      const auto loc = text.substr(1, r - 1);
      const auto run = text.substr(r + 1);
      if (all_digits(loc) && all_digits(run) && loc.front() != '0' && run.front() != '0') {
        return unique(static_cast<int>(to_int(loc, text)), to_int(run, text));
      }
    }
  }
  throw Error(ErrorCode::kInvalidIdentity, "not a bib or LiRj identity: '" + std::string(text) + "'");
}

std::string Identity::str() const {
  if (is_bib()) return std::to_string(as_bib().value);
  const auto& u = as_unique();
  return "L" + std::to_string(u.location) + "R" + std::to_string(u.runner);
}

}  // namespace runlabel
