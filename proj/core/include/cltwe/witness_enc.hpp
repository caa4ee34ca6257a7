#pragma once

// Witness encryption for Exact Cover over the asymmetric graded encoding.
//
// Encryption samples a_1..a_U, publishes c_i = [prod_{j in S_i} a_j] at level
// indicator(S_i), and per message bit either d = [prod_j a_j] (bit 1) or an
// encoding of a fresh random vector (bit 0) at the all-ones level. Any exact
// cover T gives prod_{i in T} c_i at the all-ones level, and d - c* zero-tests
// exactly when the bit is 1.
//
// Multi-bit messages reuse the same c_i for every bit. The bits stay
// randomized encodings, but nothing in the scheme guarantees they are
// indistinguishable from encodings of other elements.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cltwe/clt.hpp"
#include "cltwe/exact_cover.hpp"
#include "cltwe/rng.hpp"

namespace cltwe {

struct MessageBits {
  std::vector<std::uint8_t> bits;  // each 0 or 1

  // Four bits per hex digit, most significant first. Throws ParameterError.
  static MessageBits from_hex(std::string_view hex);
  // Lowercase hex; requires a multiple of four bits.
  std::string to_hex() const;

  bool operator==(const MessageBits&) const = default;
};

struct Ciphertext {
  std::size_t lambda = 0;
  PublicParams pp;
  ExactCoverInstance instance;
  std::vector<Encoding> c;  // c[i] at indicator(S_i)
  std::vector<Encoding> d;  // one per message bit, all-ones level
  Digest seed_commitment{};  // SHA-256 of the encryption seed

  bool operator==(const Ciphertext&) const = default;
};

// The trapdoor is destroyed before this returns. Throws ParameterError on an
// empty instance or message, or a lambda below the floor.
Ciphertext encrypt(const ExactCoverInstance& instance, const MessageBits& message,
                   std::size_t lambda, std::span<const std::uint8_t> seed);

struct DebugEncryption {
  Ciphertext ciphertext;
  SecretState secret;
};

// Same output as encrypt(), but hands back the trapdoor. Debug use only.
DebugEncryption encrypt_keep_secrets(const ExactCoverInstance& instance, const MessageBits& message,
                                     std::size_t lambda, std::span<const std::uint8_t> seed);

// std::nullopt (bottom) unless the witness's indicator vectors sum to the
// all-ones vector. Throws WitnessError on an out-of-range index.
std::optional<MessageBits> decrypt(const Ciphertext& ct, const Witness& witness);

// Line-oriented text, magic "CLTWE1", terminated by "END".
std::string serialize(const Ciphertext& ct);
// Throws FormatError (with byte offset) on any malformed or truncated input.
Ciphertext deserialize(std::string_view text);

}  // namespace cltwe
