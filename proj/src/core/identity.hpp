#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace runlabel {

inline constexpr int kLocationCount = 42;

struct BibId {
  std::int64_t value;
  friend auto operator<=>(const BibId&, const BibId&) = default;
};

/// Fallback label for a runner whose bib could not be read: location i,
/// runner j, rendered "LiRj".
struct UniqueId {
  int location;
  std::int64_t runner;
  friend auto operator<=>(const UniqueId&, const UniqueId&) = default;
};

class Identity {
 public:
  static Identity bib(std::int64_t value);
  static Identity unique(int location, std::int64_t runner);

  /// Accepts bare decimal digits (bib) or "L<i>R<j>". Throws kInvalidIdentity.
  static Identity parse(std::string_view text);

  bool is_bib() const noexcept { return std::holds_alternative<BibId>(value_); }
  bool is_unique() const noexcept { return std::holds_alternative<UniqueId>(value_); }
  const BibId& as_bib() const { return std::get<BibId>(value_); }
  const UniqueId& as_unique() const { return std::get<UniqueId>(value_); }

  std::string str() const;

  friend bool operator==(const Identity&, const Identity&) = default;
  friend bool operator<(const Identity& a, const Identity& b) { return a.value_ < b.value_; }

 private:
  explicit Identity(std::variant<BibId, UniqueId> v) : value_(v) {}

  std::variant<BibId, UniqueId> value_;
};

}  // namespace runlabel
