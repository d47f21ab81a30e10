#pragma once

#include <array>
#include <cstdint>

#include "core/identity.hpp"
#include "core/json_io.hpp"

namespace runlabel {

/// Hands out "LiRj" identities, numbering runners from 1 per location.
/// Not synchronized: callers serialize mutations.
class UniqueIdCounter {
 public:
  /// Throws Error(kUnknownLocation) outside 1..42.
  Identity next(int location_number);

  /// Runner numbers issued so far at a location.
  std::int64_t issued(int location_number) const;

  /// {"<location>": last issued runner number, ...}
  Json to_json() const;
  static UniqueIdCounter from_json(const Json& j);

 private:
  std::array<std::int64_t, kLocationCount + 1> last_{};
};

}  // namespace runlabel
