#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace cltwe {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> data);

// AES-128 in counter mode over an all-zero plaintext. The key is
// SHA-256(label || 0x00 || seed) truncated to 16 bytes and the stream index
// occupies the high half of the initial counter block, so distinct
// (label, stream) pairs give independent streams from one seed.
//
// Move-only: each stream has exactly one owner.
class AesCtrRng {
 public:
  AesCtrRng(std::span<const std::uint8_t> seed, std::string_view label, std::uint64_t stream);
  ~AesCtrRng();

  AesCtrRng(AesCtrRng&&) noexcept;
  AesCtrRng& operator=(AesCtrRng&&) noexcept;
  AesCtrRng(const AesCtrRng&) = delete;
  AesCtrRng& operator=(const AesCtrRng&) = delete;

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();

  // Uniform in [0, 2^bits).
  mpz_class bits(std::size_t bits);
  // Uniform in [0, bound); bound > 0.
  mpz_class below(const mpz_class& bound);
  // Uniform in the open interval (-2^bits, 2^bits).
  mpz_class signed_bits(std::size_t bits);
  // Uniform in [0, bound) for small bounds.
  std::uint64_t below_u64(std::uint64_t bound);

 private:
  struct Ctx;
  void refill();

  std::unique_ptr<Ctx> ctx_;
  std::vector<std::uint8_t> buffer_;
  std::size_t pos_ = 0;
};

// Random prime with exactly `bits` bits (top bit set).
mpz_class random_prime(AesCtrRng& rng, std::size_t bits);

}  // namespace cltwe
