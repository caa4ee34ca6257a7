#include "cltwe/zeroizing.hpp"

#include <algorithm>
#include <sstream>

#include "cltwe/error.hpp"
#include "cltwe/hex.hpp"
#include "serial_blocks.hpp"

namespace cltwe {
namespace {

__extension__ using u128 = unsigned __int128;

mpz_class pow2(std::size_t bits) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, bits);
  return out;
}

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

mpz_class mod_floor(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Fast filter for the root scan: evaluates the polynomial mod 2^61 - 1 and
// only confirms candidates with exact arithmetic.
class RootScanner {
 public:
  explicit RootScanner(std::span<const mpz_class> coeffs) : coeffs_(coeffs.begin(), coeffs.end()) {
    const mpz_class mod(kModStr);
    for (const auto& c : coeffs_) {
      mpz_class r = mod_floor(c, mod);
      residues_.push_back(mpz_get_ui(r.get_mpz_t()));
    }
  }

  std::vector<mpz_class> scan(const mpz_class& bound) const {
    std::vector<mpz_class> roots;
    const std::size_t degree = coeffs_.size() - 1;
    if (!mpz_fits_slong_p(bound.get_mpz_t())) return integer_roots_scan(coeffs_, bound);
    const long b = mpz_get_si(bound.get_mpz_t());
    for (long x = -b + 1; x < b && roots.size() < degree; ++x) {
      const std::uint64_t xm = x < 0 ? kMod - static_cast<std::uint64_t>(-x) % kMod
                                     : static_cast<std::uint64_t>(x) % kMod;
      u128 acc = 0;
      for (std::size_t i = residues_.size(); i-- > 0;) {
        acc = reduce(acc * xm + residues_[i]);
      }
      if (acc != 0) continue;
      const mpz_class xz(x);
      if (sgn(eval_poly(coeffs_, xz)) == 0) roots.push_back(xz);
    }
    return roots;
  }

 private:
  static constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;
  static constexpr const char* kModStr = "2305843009213693951";

  static std::uint64_t reduce(u128 v) {
    v = (v & kMod) + (v >> 61);
    v = (v & kMod) + (v >> 61);
    std::uint64_t r = static_cast<std::uint64_t>(v);
    return r >= kMod ? r - kMod : r;
  }

  std::vector<mpz_class> coeffs_;
  std::vector<std::uint64_t> residues_;
};

}  // namespace

mpz_class crt_combine(std::span<const mpz_class> moduli, std::span<const mpz_class> residues) {
  if (moduli.size() != residues.size() || moduli.empty()) {
    throw ArithmeticError("crt_combine: need matching non-empty moduli and residues");
  }
  mpz_class m = 1;
  for (const auto& q : moduli) {
    if (sgn(q) <= 0) throw ArithmeticError("crt_combine: moduli must be positive");
    if (gcd(m, q) != 1) throw ArithmeticError("crt_combine: moduli are not pairwise coprime");
    m *= q;
  }
  mpz_class x = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const mpz_class hat = m / moduli[i];
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), mpz_class(hat % moduli[i]).get_mpz_t(), moduli[i].get_mpz_t());
    x += residues[i] * hat * inv;
  }
  return centered_mod(x, m);
}

mpz_class lemma_product(const mpz_class& a, const mpz_class& p_hat_aux, const mpz_class& x0) {
  return centered_mod(a * p_hat_aux, x0);
}

// ---------------------------------------------------------------------------
// CRT-ACD instance

CrtAcdInstance::CrtAcdInstance(std::vector<mpz_class> primes, std::size_t eta, std::size_t eps,
                               AesCtrRng rng)
    : primes_(std::move(primes)), eta_(eta), eps_(eps), rng_(std::move(rng)) {
  x0_ = 1;
  for (const auto& p : primes_) x0_ *= p;
  std::vector<mpz_class> hats;
  for (const auto& p : primes_) hats.push_back(mod_floor(x0_ / p, p));
  p_hat_ = crt_combine(primes_, hats);
}

CrtAcdInstance CrtAcdInstance::generate(std::size_t n, std::size_t eta, std::size_t eps,
                                        std::span<const std::uint8_t> seed) {
  if (n == 0 || eps == 0) throw ParameterError("CRT-ACD: n and eps must be positive");
  if (3 * eps + ceil_log2(n) + 1 >= eta) {
    throw ParameterError("CRT-ACD: need 3*eps + ceil(log2 n) + 1 < eta");
  }
  if (seed.empty()) throw ParameterError("CRT-ACD: seed must be non-empty");
  AesCtrRng gen(seed, "cltwe/crt-acd/primes", 0);
  std::vector<mpz_class> primes;
  while (primes.size() < n) {
    mpz_class p = random_prime(gen, eta);
    if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(std::move(p));
  }
  return CrtAcdInstance(std::move(primes), eta, eps, AesCtrRng(seed, "cltwe/crt-acd/samples", 0));
}

std::vector<mpz_class> CrtAcdInstance::draw_residues() {
  std::vector<mpz_class> r;
  r.reserve(primes_.size());
  for (std::size_t i = 0; i < primes_.size(); ++i) r.push_back(rng_.signed_bits(eps_));
  return r;
}

mpz_class CrtAcdInstance::combine(std::span<const mpz_class> residues) const {
  return crt_combine(primes_, residues);
}

mpz_class CrtAcdInstance::sample() { return combine(draw_residues()); }

// ---------------------------------------------------------------------------
// Attacks

const char* to_string(AttackStatus s) {
  switch (s) {
    case AttackStatus::kSuccess:
      return "success";
    case AttackStatus::kSingularRetryExhausted:
      return "singular-retry-exhausted";
    case AttackStatus::kNoDistinctEigenvalues:
      return "no-distinct-eigenvalues";
  }
  return "unknown";
}

std::vector<mpz_class> recover_primes(const IntMatrix& w, const IntMatrix& wp, const mpz_class& b,
                                      const mpz_class& x0, const mpz_class& bound, bool& singular) {
  singular = false;
  auto poly = pencil_charpoly(w, wp);
  if (!poly) {
    singular = true;
    return {};
  }
  const std::size_t n = w.size();
  const std::vector<mpz_class> roots = RootScanner(*poly).scan(bound);
  if (roots.size() != n) return {};

  std::vector<mpz_class> primes;
  mpz_class product = 1;
  for (const auto& root : roots) {
    mpz_class g = gcd(b - root, x0);
    if (g == 1 || (g == x0 && n > 1)) return {};
    if (std::find(primes.begin(), primes.end(), g) != primes.end()) return {};
    product *= g;
    primes.push_back(std::move(g));
  }
  if (product != x0) return {};
  std::sort(primes.begin(), primes.end());
  return primes;
}

AttackResult attack_crt_acd(CrtAcdInstance& inst, std::size_t max_retries) {
  const std::size_t n = inst.n();
  const mpz_class& x0 = inst.x0();
  const mpz_class bound = pow2(inst.eps());

  AttackResult result;
  bool any_nonsingular = false;
  for (std::size_t trial = 1; trial <= std::max<std::size_t>(max_retries, 1); ++trial) {
    result.trials_used = trial;
    std::vector<mpz_class> a(n), c(n);
    for (auto& v : a) v = inst.sample();
    const mpz_class b = inst.sample();
    for (auto& v : c) v = inst.sample();

    IntMatrix w(n, std::vector<mpz_class>(n)), wp(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const mpz_class ab = mod_floor(a[i] * b, x0);
      for (std::size_t j = 0; j < n; ++j) {
        w[i][j] = lemma_product(mod_floor(ab * c[j], x0), inst.p_hat(), x0);
        wp[i][j] = lemma_product(mod_floor(a[i] * c[j], x0), inst.p_hat(), x0);
      }
    }
    bool singular = false;
    auto primes = recover_primes(w, wp, b, x0, bound, singular);
    any_nonsingular |= !singular;
    if (!primes.empty()) {
      result.primes = std::move(primes);
      result.status = AttackStatus::kSuccess;
      return result;
    }
  }
  result.status = any_nonsingular ? AttackStatus::kNoDistinctEigenvalues
                                  : AttackStatus::kSingularRetryExhausted;
  return result;
}

AttackResult attack_clt(const PublicParams& pp, const SymmetricPublicEncodings& pub,
                        std::span<const std::uint8_t> seed, std::size_t max_retries) {
  const std::size_t n = pub.xs.size();
  if (n == 0 || pub.xps.size() < n + 1 || pub.kappa == 0) {
    throw ParameterError("attack_clt: need tau >= 1 zero encodings and ell >= tau + 1 level-0 encodings");
  }
  if (seed.empty()) throw ParameterError("attack_clt: seed must be non-empty");
  const mpz_class& x0 = pp.x0;

  mpz_class y_pow = 1;
  for (std::size_t k = 1; k < pub.kappa; ++k) y_pow = mod_floor(y_pow * pub.y, x0);
  // y^(kappa-1) * pzt is shared by every entry.
  const mpz_class tail = mod_floor(y_pow * pp.pzt, x0);
  const mpz_class residue_bound = pow2(pub.rho + pub.alpha + 1);

  AesCtrRng rng(seed, "cltwe/attack-clt", 0);
  auto subset_sum = [&](const std::vector<mpz_class>& pool, std::size_t& terms) {
    mpz_class acc = 0;
    terms = 0;
    while (terms == 0) {
      for (const auto& v : pool) {
        if (rng.below_u64(2) == 1) {
          acc += v;
          ++terms;
        }
      }
    }
    return mod_floor(acc, x0);
  };

  AttackResult result;
  bool any_nonsingular = false;
  for (std::size_t trial = 1; trial <= std::max<std::size_t>(max_retries, 1); ++trial) {
    result.trials_used = trial;
    mpz_class b;
    std::vector<mpz_class> rows(n), cols(n);
    std::size_t b_terms = 1;
    if (trial == 1) {
      b = pub.xps[0];
      for (std::size_t j = 0; j < n; ++j) {
        rows[j] = pub.xps[j + 1];
        cols[j] = pub.xs[j];
      }
    } else {
      std::size_t t = 0;
      b = subset_sum(pub.xps, b_terms);
      for (auto& r : rows) r = subset_sum(pub.xps, t);
      for (auto& c : cols) c = subset_sum(pub.xs, t);
    }

    IntMatrix w(n, std::vector<mpz_class>(n)), wp(n, std::vector<mpz_class>(n));
    for (std::size_t j = 0; j < n; ++j) {
      const mpz_class row_tail = mod_floor(rows[j] * tail, x0);
      for (std::size_t k = 0; k < n; ++k) {
        const mpz_class base = mod_floor(row_tail * cols[k], x0);
        wp[j][k] = centered_mod(base, x0);
        w[j][k] = centered_mod(base * b, x0);
      }
    }
    bool singular = false;
    auto primes = recover_primes(w, wp, b, x0, residue_bound * static_cast<unsigned long>(b_terms),
                                 singular);
    any_nonsingular |= !singular;
    if (!primes.empty()) {
      result.primes = std::move(primes);
      result.status = AttackStatus::kSuccess;
      return result;
    }
  }
  result.status = any_nonsingular ? AttackStatus::kNoDistinctEigenvalues
                                  : AttackStatus::kSingularRetryExhausted;
  return result;
}

// ---------------------------------------------------------------------------
// Symmetric public file

std::string serialize_symmetric_public(const PublicParams& pp, const SymmetricPublicEncodings& pub) {
  std::ostringstream out;
  out << "CLTSYM1\n" << serialize_public_params(pp);
  out << "kappa=" << pub.kappa << "\nrho=" << pub.rho << "\nalpha=" << pub.alpha << '\n';
  out << "X=" << pub.xs.size() << '\n';
  for (std::size_t j = 0; j < pub.xs.size(); ++j) out << "X " << j << ' ' << to_hex(pub.xs[j]) << '\n';
  out << "XP=" << pub.xps.size() << '\n';
  for (std::size_t j = 0; j < pub.xps.size(); ++j) out << "XP " << j << ' ' << to_hex(pub.xps[j]) << '\n';
  out << "Y " << to_hex(pub.y) << '\n';
  out << "END\n";
  return out.str();
}

std::pair<PublicParams, SymmetricPublicEncodings> parse_symmetric_public(std::string_view text) {
  detail::TextReader in(text);
  in.expect_line("CLTSYM1");
  PublicParams pp = detail::read_public_params(in);
  SymmetricPublicEncodings pub;
  pub.kappa = in.keyed_size("kappa");
  pub.rho = in.keyed_size("rho");
  pub.alpha = in.keyed_size("alpha");

  auto read_list = [&](std::string_view tag, std::vector<mpz_class>& out) {
    const std::size_t count = in.keyed_size(tag);
    for (std::size_t j = 0; j < count; ++j) {
      auto toks = detail::split_ws(in.line(tag));
      if (toks.size() != 3 || toks[0] != tag || detail::parse_size(toks[1]) != j) {
        in.fail("expected '" + std::string(tag) + " " + std::to_string(j) + " <hex>'");
      }
      try {
        out.push_back(mpz_from_hex(toks[2]));
      } catch (const std::invalid_argument& e) {
        in.fail(e.what());
      }
      if (out.back() >= pp.x0) in.fail("element not reduced mod x0");
    }
  };
  read_list("X", pub.xs);
  read_list("XP", pub.xps);
  auto toks = detail::split_ws(in.line("Y"));
  if (toks.size() != 2 || toks[0] != "Y") in.fail("expected 'Y <hex>'");
  try {
    pub.y = mpz_from_hex(toks[1]);
  } catch (const std::invalid_argument& e) {
    in.fail(e.what());
  }
  in.expect_line("END");
  if (!in.at_end()) in.fail("trailing data after END");
  return {pp, pub};
}

}  // namespace cltwe
