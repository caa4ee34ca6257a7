#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace cltwe {

// Lowercase, big-endian, no leading zeros; zero is "0". Negative values are rejected.
std::string to_hex(const mpz_class& value);

// Strict inverse of to_hex: rejects uppercase, leading zeros, empty input. Throws
// std::invalid_argument.
mpz_class mpz_from_hex(std::string_view hex);

std::string bytes_to_hex(const std::vector<std::uint8_t>& bytes);

// Even-length hex (either case) to bytes. Throws std::invalid_argument.
std::vector<std::uint8_t> bytes_from_hex(std::string_view hex);

}  // namespace cltwe
