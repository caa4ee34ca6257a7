#include "cltwe/rng.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include <openssl/evp.h>

namespace cltwe {
namespace {

constexpr std::size_t kBufferBytes = 4096;

}  // namespace

Digest sha256(std::span<const std::uint8_t> data) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw std::runtime_error("SHA-256 failed");
  }
  return out;
}

struct AesCtrRng::Ctx {
  EVP_CIPHER_CTX* ctx = nullptr;
  ~Ctx() { EVP_CIPHER_CTX_free(ctx); }
};

AesCtrRng::AesCtrRng(std::span<const std::uint8_t> seed, std::string_view label,
                     std::uint64_t stream)
    : ctx_(std::make_unique<Ctx>()), buffer_(kBufferBytes), pos_(kBufferBytes) {
  std::vector<std::uint8_t> material(label.begin(), label.end());
  material.push_back(0);
  material.insert(material.end(), seed.begin(), seed.end());
  const Digest key = sha256(material);

  std::array<std::uint8_t, 16> iv{};
  for (int i = 0; i < 8; ++i) iv[i] = static_cast<std::uint8_t>(stream >> (56 - 8 * i));

  ctx_->ctx = EVP_CIPHER_CTX_new();
  if (ctx_->ctx == nullptr ||
      EVP_EncryptInit_ex(ctx_->ctx, EVP_aes_128_ctr(), nullptr, key.data(), iv.data()) != 1) {
    throw std::runtime_error("AES-CTR initialisation failed");
  }
}

AesCtrRng::~AesCtrRng() = default;
AesCtrRng::AesCtrRng(AesCtrRng&&) noexcept = default;
AesCtrRng& AesCtrRng::operator=(AesCtrRng&&) noexcept = default;

void AesCtrRng::refill() {
  static const std::array<std::uint8_t, kBufferBytes> zeros{};
  int outl = 0;
  if (EVP_EncryptUpdate(ctx_->ctx, buffer_.data(), &outl, zeros.data(),
                        static_cast<int>(kBufferBytes)) != 1 ||
      outl != static_cast<int>(kBufferBytes)) {
    throw std::runtime_error("AES-CTR keystream generation failed");
  }
  pos_ = 0;
}

void AesCtrRng::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (pos_ == buffer_.size()) refill();
    const std::size_t take = std::min(out.size() - done, buffer_.size() - pos_);
    std::memcpy(out.data() + done, buffer_.data() + pos_, take);
    pos_ += take;
    done += take;
  }
}

std::uint64_t AesCtrRng::next_u64() {
  std::array<std::uint8_t, 8> b{};
  fill(b);
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

mpz_class AesCtrRng::bits(std::size_t nbits) {
  mpz_class out;
  if (nbits == 0) return out;
  std::vector<std::uint8_t> raw((nbits + 7) / 8);
  fill(raw);
  mpz_import(out.get_mpz_t(), raw.size(), 1, 1, 1, 0, raw.data());
  mpz_fdiv_r_2exp(out.get_mpz_t(), out.get_mpz_t(), nbits);
  return out;
}

mpz_class AesCtrRng::below(const mpz_class& bound) {
  if (sgn(bound) <= 0) throw std::invalid_argument("AesCtrRng::below: bound must be positive");
  const std::size_t nbits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  for (;;) {
    mpz_class candidate = bits(nbits);
    if (candidate < bound) return candidate;
  }
}

mpz_class AesCtrRng::signed_bits(std::size_t nbits) {
  mpz_class half;
  mpz_ui_pow_ui(half.get_mpz_t(), 2, nbits);
  // 2^(n+1) - 1 values: -(2^n - 1) .. 2^n - 1
  mpz_class span = 2 * half - 1;
  return below(span) - (half - 1);
}

std::uint64_t AesCtrRng::below_u64(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("AesCtrRng::below_u64: zero bound");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

mpz_class random_prime(AesCtrRng& rng, std::size_t nbits) {
  if (nbits < 2) throw std::invalid_argument("random_prime: need at least 2 bits");
  for (;;) {
    mpz_class candidate = rng.bits(nbits);
    mpz_setbit(candidate.get_mpz_t(), nbits - 1);
    mpz_nextprime(candidate.get_mpz_t(), candidate.get_mpz_t());
    if (mpz_sizeinbase(candidate.get_mpz_t(), 2) == nbits) return candidate;
  }
}

}  // namespace cltwe
