#pragma once

// Asymmetric CLT13-style graded encoding over the integers.
//
// An encoding of m = (m_1..m_n) at level v is the integer c in [0, x0) with
//
//     c = (r_i * g_i + m_i) / prod_j z_j^{v_j}   (mod p_i)   for every slot i,
//
// where the p_i are secret eta-bit primes, x0 = prod p_i, the g_i are secret
// alpha-bit plaintext moduli, the z_j are level denominators and the r_i are
// fresh noise drawn from (-2^rho, 2^rho). Top level is the all-ones vector;
// only there does the public element pzt turn an encoding of zero into an
// integer that is small compared with x0.
//
// Parameters are desk-scale: nothing here is secure in any real-world sense.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "cltwe/rng.hpp"

namespace cltwe {

struct SystemParams {
  std::size_t lambda = 0;      // security parameter, bits
  std::size_t universe = 0;    // number of level coordinates (U)
  std::size_t n_primes = 0;    // secret primes / plaintext slots
  std::size_t eta = 0;         // bit length of each p_i
  std::size_t alpha = 0;       // bit length of each g_i
  std::size_t rho = 0;         // encoding noise bits
  std::size_t beta = 0;        // zero-test coefficient bits
  std::size_t nu = 0;          // zero-test gap
  std::size_t max_degree = 0;  // D: most fresh encodings in one product
  std::size_t ell = 0;         // published level-0 encodings (symmetric only)
  std::size_t tau = 0;         // published level-1 zero encodings (symmetric only)
  bool symmetric = false;

  // Throws ParameterError if any invariant fails.
  void validate() const;

  bool operator==(const SystemParams&) const = default;
};

// Smallest eta for which an honest product of `max_degree` fresh encodings
// still passes the zero test:
//   eta = D(rho + alpha + 1) + beta + nu + ceil(log2 n) + 8.
std::size_t required_eta(std::size_t max_degree, std::size_t rho, std::size_t alpha,
                         std::size_t beta, std::size_t nu, std::size_t n_primes);

std::size_t ceil_log2(std::size_t x);

// Parameters for the witness-encryption scheme: rho = alpha = beta = lambda,
// n = max(4, ceil(lambda/4)), nu = lambda + ceil(log2 n) + 2, D = U + 1.
SystemParams derive_params(std::size_t lambda, std::size_t universe, bool symmetric = false);

// Symmetric profile for the zeroizing demo. Same formulas, but D = kappa + 2 so
// the products x'_j * x'_1 * x_k * y^(kappa-1) used by the attack stay below
// x0 / 2 after multiplication by pzt.
SystemParams derive_attack_params(std::size_t lambda, std::size_t kappa);

// Level vector with coordinates restricted to {0, 1}.
class LevelVector {
 public:
  LevelVector() = default;
  // Throws LevelError if a coordinate is outside {0, 1}.
  explicit LevelVector(std::vector<std::uint8_t> coords);

  static LevelVector zero(std::size_t universe);
  static LevelVector top(std::size_t universe);
  // Indicator of `members`; throws LevelError on an index >= universe.
  static LevelVector indicator(std::size_t universe, std::span<const std::size_t> members);

  std::size_t size() const { return coords_.size(); }
  std::uint8_t operator[](std::size_t j) const { return coords_[j]; }
  std::span<const std::uint8_t> coords() const { return coords_; }
  bool is_top() const;
  bool is_zero() const;

  // Coordinate-wise sum; throws LevelError on length mismatch or a coordinate
  // exceeding 1.
  LevelVector checked_sum(const LevelVector& other) const;

  bool operator==(const LevelVector&) const = default;

 private:
  std::vector<std::uint8_t> coords_;
};

struct PlaintextVector {
  std::vector<mpz_class> slots;

  bool operator==(const PlaintextVector&) const = default;
};

struct Encoding {
  mpz_class elem;  // canonical representative in [0, x0)
  LevelVector level;
  // Number of fresh encodings multiplied into this one; add takes the max.
  std::size_t degree = 1;

  bool operator==(const Encoding&) const = default;
};

struct PublicParams {
  mpz_class x0;
  mpz_class pzt;
  std::size_t nu = 0;
  std::size_t universe = 0;

  std::size_t max_degree() const { return universe + 1; }
  bool operator==(const PublicParams&) const = default;
};

// Full trapdoor. Everything except the RNG streams is fixed after
// instance_gen; encode and sample_plaintext advance the streams.
struct SecretState {
  SystemParams params;
  std::vector<mpz_class> p;
  mpz_class x0;
  std::vector<mpz_class> g;
  std::vector<mpz_class> z;
  std::vector<mpz_class> z_inv;
  std::vector<mpz_class> h;
  std::vector<mpz_class> crt_coeffs;  // (x0/p_i) * ((x0/p_i)^-1 mod p_i)
  mpz_class pzt;
  std::vector<AesCtrRng> rngs;        // one stream per slot

  PublicParams public_params() const;
};

// Published values of a symmetric instance (all z_j equal), consumed only by
// the zeroizing attack.
struct SymmetricPublicEncodings {
  std::vector<mpz_class> xs;   // tau level-1 encodings of zero
  std::vector<mpz_class> xps;  // ell level-0 encodings of random plaintexts
  mpz_class y;                 // level-1 encoding of the all-ones plaintext
  std::size_t kappa = 0;
  std::size_t rho = 0;
  std::size_t alpha = 0;

  bool operator==(const SymmetricPublicEncodings&) const = default;
};

struct CltInstance {
  SecretState secret;
  PublicParams pub;
  std::optional<SymmetricPublicEncodings> symmetric;
};

// Deterministic in (params, seed). Throws ParameterError on invalid params or
// an empty seed.
CltInstance instance_gen(const SystemParams& params, std::span<const std::uint8_t> seed);

// sum_i residues[i] * crt_coeffs[i] mod x0.
mpz_class crt_reconstruct(const SecretState& state, std::span<const mpz_class> residues);

// Each slot uniform on [0, g_i), drawn from that slot's stream.
PlaintextVector sample_plaintext(SecretState& state);

// Throws ParameterError if m has the wrong arity or a slot outside [0, g_i);
// LevelError if v has the wrong length.
Encoding encode(SecretState& state, const PlaintextVector& m, const LevelVector& v);

Encoding add(const PublicParams& pp, const Encoding& a, const Encoding& b);
Encoding neg(const PublicParams& pp, const Encoding& a);
Encoding sub(const PublicParams& pp, const Encoding& a, const Encoding& b);
// Levels must sum to at most 1 per coordinate and degrees to at most D.
Encoding mul(const PublicParams& pp, const Encoding& a, const Encoding& b);

// |centered(c * pzt mod x0)| < x0 * 2^-nu. Throws LevelError below top level.
bool is_zero(const PublicParams& pp, const Encoding& e);

// Inverts the encoding equation with the trapdoor. Throws DecodeError when a
// slot's centered numerator exceeds 2^(D(rho+alpha+1)+1).
PlaintextVector decode_debug(const SecretState& state, const Encoding& e);

// Representative of a mod m in (-m/2, m/2].
mpz_class centered_mod(const mpz_class& a, const mpz_class& m);

// "CLTPP1" block: x0=<hex>, pzt=<hex>, nu=<dec>, U=<dec>, one per line.
std::string serialize_public_params(const PublicParams& pp);
PublicParams parse_public_params(std::string_view text);

// Debug dump of the trapdoor (the CLI's --keep-secrets). Never part of a
// ciphertext.
std::string serialize_secrets(const SecretState& state);

}  // namespace cltwe
