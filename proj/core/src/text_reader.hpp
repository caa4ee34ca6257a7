#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace cltwe::detail {

// Line cursor over a serialized blob. Every line must end in '\n'; a final
// line without one is reported as truncation. Errors carry the byte offset
// of the line that failed.
class TextReader {
 public:
  explicit TextReader(std::string_view text) : text_(text) {}

  bool at_end() const { return pos_ >= text_.size(); }
  std::size_t offset() const { return pos_; }

  // Next line without the newline. `section` names what was expected, for the
  // truncation message.
  std::string_view line(std::string_view section);

  // Next line that is not a '#' comment.
  std::string_view content_line(std::string_view section);

  void expect_line(std::string_view expected);
  // Parses "key=value" and returns value.
  std::string_view keyed(std::string_view key);
  std::size_t keyed_size(std::string_view key);
  mpz_class keyed_hex(std::string_view key);

  [[noreturn]] void fail(const std::string& what) const;

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
};

std::vector<std::string_view> split_ws(std::string_view line);
std::optional<std::size_t> parse_size(std::string_view token);

}  // namespace cltwe::detail
