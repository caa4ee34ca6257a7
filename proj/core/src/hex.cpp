#include "cltwe/hex.hpp"

#include <stdexcept>

namespace cltwe {
namespace {

int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string to_hex(const mpz_class& value) {
  if (sgn(value) < 0) throw std::invalid_argument("to_hex: negative value");
  return value.get_str(16);
}

mpz_class mpz_from_hex(std::string_view hex) {
  if (hex.empty()) throw std::invalid_argument("empty hex string");
  if (hex.size() > 1 && hex.front() == '0') throw std::invalid_argument("hex has leading zero");
  for (char c : hex) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) {
      throw std::invalid_argument("non-hex digit in '" + std::string(hex.substr(0, 16)) + "'");
    }
  }
  return mpz_class(std::string(hex), 16);
}

std::string bytes_to_hex(const std::vector<std::uint8_t>& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::vector<std::uint8_t> bytes_from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex byte string");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = nibble(hex[2 * i]);
    int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("non-hex digit in byte string");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

}  // namespace cltwe
