#include "text_reader.hpp"

#include <charconv>

#include "cltwe/error.hpp"
#include "cltwe/hex.hpp"

namespace cltwe::detail {

std::string_view TextReader::line(std::string_view section) {
  line_start_ = pos_;
  if (pos_ >= text_.size()) {
    throw FormatError("truncated input: missing " + std::string(section), pos_);
  }
  const std::size_t nl = text_.find('\n', pos_);
  if (nl == std::string_view::npos) {
    throw FormatError("truncated input: unterminated line in " + std::string(section), pos_);
  }
  std::string_view out = text_.substr(pos_, nl - pos_);
  pos_ = nl + 1;
  return out;
}

std::string_view TextReader::content_line(std::string_view section) {
  for (;;) {
    std::string_view l = line(section);
    if (l.empty() || l.front() != '#') return l;
  }
}

void TextReader::expect_line(std::string_view expected) {
  std::string_view l = line(expected);
  if (l != expected) fail("expected '" + std::string(expected) + "'");
}

std::string_view TextReader::keyed(std::string_view key) {
  std::string_view l = line(key);
  if (l.size() <= key.size() || l.substr(0, key.size()) != key || l[key.size()] != '=') {
    fail("expected '" + std::string(key) + "=...'");
  }
  return l.substr(key.size() + 1);
}

std::size_t TextReader::keyed_size(std::string_view key) {
  auto v = parse_size(keyed(key));
  if (!v) fail("bad decimal value for '" + std::string(key) + "'");
  return *v;
}

mpz_class TextReader::keyed_hex(std::string_view key) {
  std::string_view v = keyed(key);
  try {
    return mpz_from_hex(v);
  } catch (const std::invalid_argument& e) {
    fail(std::string(key) + ": " + e.what());
  }
}

void TextReader::fail(const std::string& what) const { throw FormatError(what, line_start_); }

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::size_t> parse_size(std::string_view token) {
  if (token.empty() || (token.size() > 1 && token.front() == '0')) return std::nullopt;
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return v;
}

}  // namespace cltwe::detail
