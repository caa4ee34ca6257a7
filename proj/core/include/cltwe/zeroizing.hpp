#pragma once

// Zeroizing attack on CLT13 via CRT-ACD with auxiliary input.
//
// For samples a = CRT(a_k), b = CRT(b_k), c = CRT(c_k) with small residues and
// P_hat = CRT(x0 / p_k), the centered product a*b*c*P_hat mod x0 equals
// sum_k a_k b_k c_k (x0/p_k) exactly. Collecting n x n such values with and
// without b gives W = A^T diag(b_k p_hat_k) C and W' = A^T diag(p_hat_k) C, so
// W W'^{-1} is similar to diag(b_1..b_n). Its integer eigenvalues are the
// residues b_k and gcd(b - b_k, x0) = p_k.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "cltwe/charpoly.hpp"
#include "cltwe/clt.hpp"
#include "cltwe/rng.hpp"

namespace cltwe {

// Unique x in (-M/2, M/2] with x = r_i mod m_i, M = prod m_i. Throws
// ArithmeticError if the moduli are not pairwise coprime.
mpz_class crt_combine(std::span<const mpz_class> moduli, std::span<const mpz_class> residues);

// centered(a * p_hat_aux mod x0).
mpz_class lemma_product(const mpz_class& a, const mpz_class& p_hat_aux, const mpz_class& x0);

// A planted CRT-ACD instance. The primes are kept so tests can compare; the
// attack only reads x0, p_hat() and sample().
class CrtAcdInstance {
 public:
  // Throws ParameterError unless 3*eps + ceil(log2 n) + 1 < eta.
  static CrtAcdInstance generate(std::size_t n, std::size_t eta, std::size_t eps,
                                 std::span<const std::uint8_t> seed);

  std::size_t n() const { return primes_.size(); }
  std::size_t eta() const { return eta_; }
  std::size_t eps() const { return eps_; }
  const mpz_class& x0() const { return x0_; }
  const mpz_class& p_hat() const { return p_hat_; }
  const std::vector<mpz_class>& planted_primes() const { return primes_; }

  // CRT of fresh residues drawn uniformly from (-2^eps, 2^eps).
  mpz_class sample();
  // CRT of caller-chosen residues, for checking the lemma.
  mpz_class combine(std::span<const mpz_class> residues) const;
  std::vector<mpz_class> draw_residues();

 private:
  CrtAcdInstance(std::vector<mpz_class> primes, std::size_t eta, std::size_t eps, AesCtrRng rng);

  std::vector<mpz_class> primes_;
  std::size_t eta_ = 0, eps_ = 0;
  mpz_class x0_, p_hat_;
  AesCtrRng rng_;
};

enum class AttackStatus { kSuccess, kSingularRetryExhausted, kNoDistinctEigenvalues };

const char* to_string(AttackStatus s);

struct AttackResult {
  std::vector<mpz_class> primes;  // ascending
  std::size_t trials_used = 0;
  AttackStatus status = AttackStatus::kNoDistinctEigenvalues;
};

inline constexpr std::size_t kDefaultAttackRetries = 10;

AttackResult attack_crt_acd(CrtAcdInstance& inst, std::size_t max_retries = kDefaultAttackRetries);

// Attack on a symmetric instance's published values. The first trial uses
// b = x'_0, rows x'_1..x'_n and columns x_1..x_n; retries replace them with
// random subset sums drawn from `seed`.
AttackResult attack_clt(const PublicParams& pp, const SymmetricPublicEncodings& pub,
                        std::span<const std::uint8_t> seed,
                        std::size_t max_retries = kDefaultAttackRetries);

// Shared tail of both attacks: builds the pencil, finds eigenvalues in
// (-bound, bound) and turns them into factors of x0. Returns an empty vector
// with `singular` set when W' is singular.
std::vector<mpz_class> recover_primes(const IntMatrix& w, const IntMatrix& wp, const mpz_class& b,
                                      const mpz_class& x0, const mpz_class& bound, bool& singular);

// "CLTSYM1" file: public parameters, kappa, rho, alpha, the x_j, x'_j and y.
std::string serialize_symmetric_public(const PublicParams& pp, const SymmetricPublicEncodings& pub);
std::pair<PublicParams, SymmetricPublicEncodings> parse_symmetric_public(std::string_view text);

}  // namespace cltwe
