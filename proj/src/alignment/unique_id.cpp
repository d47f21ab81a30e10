#include "alignment/unique_id.hpp"

#include "core/error.hpp"

namespace runlabel {
namespace {

void check_location(int location_number) {
  if (location_number < 1 || location_number > kLocationCount) {
    throw Error(ErrorCode::kUnknownLocation, "unknown location " + std::to_string(location_number));
  }
}

}  // namespace

Identity UniqueIdCounter::next(int location_number) {
  check_location(location_number);
  auto& last = last_[static_cast<std::size_t>(location_number)];
  return Identity::unique(location_number, ++last);
}

std::int64_t UniqueIdCounter::issued(int location_number) const {
  check_location(location_number);
  return last_[static_cast<std::size_t>(location_number)];
}

Json UniqueIdCounter::to_json() const {
  Json j = Json::object();
  for (int loc = 1; loc <= kLocationCount; ++loc) {
    const auto v = last_[static_cast<std::size_t>(loc)];
    if (v > 0) j[std::to_string(loc)] = v;
  }
  return j;
}

UniqueIdCounter UniqueIdCounter::from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kMalformedDocument, "counter state must be an object");
  UniqueIdCounter c;
  for (const auto& [key, value] : j.items()) {
    int loc = 0;
    try {
      loc = std::stoi(key);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kMalformedDocument, "counter key '" + key + "' is not a location");
    }
    check_location(loc);
    if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
      throw Error(ErrorCode::kMalformedDocument, "counter for location " + key + " must be a count");
    }
    c.last_[static_cast<std::size_t>(loc)] = value.get<std::int64_t>();
  }
  return c;
}

}  // namespace runlabel
