#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace runlabel::csv {

using Row = std::vector<std::string>;

/// RFC 4180: comma separated, optional double-quoted fields with "" escapes,
/// LF or CRLF line ends. Blank lines are skipped. Throws Error(kMalformedRow)
/// on an unterminated quote.
std::vector<Row> parse(std::string_view text);

/// Quotes a field only when it contains a comma, quote or line break.
std::string escape(std::string_view field);
std::string format_row(const Row& row);

/// Header lookup for a parsed table.
class Header {
 public:
  explicit Header(Row names);

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws Error(kMissingColumn).
  std::size_t require(std::string_view name) const;
  const Row& names() const noexcept { return names_; }

 private:
  Row names_;
};

}  // namespace runlabel::csv
