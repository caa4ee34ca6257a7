#include "cltwe/clt.hpp"

#include <algorithm>
#include <sstream>

#include "cltwe/error.hpp"
#include "cltwe/hex.hpp"
#include "serial_blocks.hpp"

namespace cltwe {
namespace {

constexpr std::size_t kMinLambda = 8;
constexpr std::size_t kEtaSlackBits = 8;

std::size_t bit_length(const mpz_class& v) {
  return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

mpz_class mod_floor(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class invert(const mpz_class& a, const mpz_class& m) {
  mpz_class out;
  if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw ArithmeticError("element not invertible");
  }
  return out;
}

std::vector<mpz_class> distinct_primes(AesCtrRng& rng, std::size_t count, std::size_t bits) {
  std::vector<mpz_class> out;
  out.reserve(count);
  while (out.size() < count) {
    mpz_class p = random_prime(rng, bits);
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::size_t ceil_log2(std::size_t x) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < x) ++bits;
  return bits;
}

std::size_t required_eta(std::size_t max_degree, std::size_t rho, std::size_t alpha,
                         std::size_t beta, std::size_t nu, std::size_t n_primes) {
  return max_degree * (rho + alpha + 1) + beta + nu + ceil_log2(n_primes) + kEtaSlackBits;
}

void SystemParams::validate() const {
  if (lambda < kMinLambda) {
    throw ParameterError("lambda must be at least " + std::to_string(kMinLambda));
  }
  if (universe < 1) throw ParameterError("universe size must be at least 1");
  if (n_primes == 0 || alpha == 0 || rho == 0 || beta == 0 || nu == 0 || eta == 0) {
    throw ParameterError("all size parameters must be positive");
  }
  if (symmetric && (ell == 0 || tau == 0)) {
    throw ParameterError("symmetric mode needs ell and tau");
  }
  if (max_degree < universe + 1) throw ParameterError("max degree must be at least U + 1");
  if (nu < lambda) throw ParameterError("nu must be at least lambda");
  if (eta < required_eta(max_degree, rho, alpha, beta, nu, n_primes)) {
    throw ParameterError("eta too small for an honest zero test at max degree");
  }
}

SystemParams derive_params(std::size_t lambda, std::size_t universe, bool symmetric) {
  if (lambda < kMinLambda) {
    throw ParameterError("lambda must be at least " + std::to_string(kMinLambda) + ", got " +
                         std::to_string(lambda));
  }
  if (universe < 1) throw ParameterError("universe size must be at least 1");

  SystemParams p;
  p.lambda = lambda;
  p.universe = universe;
  p.n_primes = std::max<std::size_t>(4, (lambda + 3) / 4);
  p.rho = p.alpha = p.beta = lambda;
  p.nu = lambda + ceil_log2(p.n_primes) + 2;
  p.max_degree = universe + 1;
  p.eta = required_eta(p.max_degree, p.rho, p.alpha, p.beta, p.nu, p.n_primes);
  p.symmetric = symmetric;
  if (symmetric) {
    p.ell = p.n_primes + 1;
    p.tau = p.n_primes;
  }
  p.validate();
  return p;
}

SystemParams derive_attack_params(std::size_t lambda, std::size_t kappa) {
  SystemParams p = derive_params(lambda, kappa, /*symmetric=*/true);
  p.max_degree = kappa + 2;
  p.eta = required_eta(p.max_degree, p.rho, p.alpha, p.beta, p.nu, p.n_primes);
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// LevelVector

LevelVector::LevelVector(std::vector<std::uint8_t> coords) : coords_(std::move(coords)) {
  for (auto c : coords_) {
    if (c > 1) throw LevelError("level coordinates are restricted to {0, 1}");
  }
}

LevelVector LevelVector::zero(std::size_t universe) {
  return LevelVector(std::vector<std::uint8_t>(universe, 0));
}

LevelVector LevelVector::top(std::size_t universe) {
  return LevelVector(std::vector<std::uint8_t>(universe, 1));
}

LevelVector LevelVector::indicator(std::size_t universe, std::span<const std::size_t> members) {
  std::vector<std::uint8_t> v(universe, 0);
  for (auto j : members) {
    if (j >= universe) throw LevelError("indicator index out of range");
    v[j] = 1;
  }
  return LevelVector(std::move(v));
}

bool LevelVector::is_top() const {
  return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c == 1; });
}

bool LevelVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c == 0; });
}

LevelVector LevelVector::checked_sum(const LevelVector& other) const {
  if (other.size() != size()) throw LevelError("level vectors differ in length");
  std::vector<std::uint8_t> out(size());
  for (std::size_t j = 0; j < size(); ++j) {
    out[j] = static_cast<std::uint8_t>(coords_[j] + other.coords_[j]);
    if (out[j] > 1) {
      throw LevelError("level overflow at coordinate " + std::to_string(j));
    }
  }
  LevelVector sum;
  sum.coords_ = std::move(out);
  return sum;
}

// ---------------------------------------------------------------------------
// Instance generation

PublicParams SecretState::public_params() const {
  return PublicParams{x0, pzt, params.nu, params.universe};
}

CltInstance instance_gen(const SystemParams& params, std::span<const std::uint8_t> seed) {
  params.validate();
  if (seed.empty()) throw ParameterError("seed must be non-empty");

  AesCtrRng gen(seed, "cltwe/instance", 0);
  SecretState st;
  st.params = params;
  const std::size_t n = params.n_primes;

  st.p = distinct_primes(gen, n, params.eta);
  st.x0 = 1;
  for (const auto& p : st.p) st.x0 *= p;
  st.g = distinct_primes(gen, n, params.alpha);

  const std::size_t z_count = params.symmetric ? 1 : params.universe;
  for (std::size_t j = 0; j < z_count; ++j) {
    mpz_class z, gcd;
    do {
      z = gen.below(st.x0);
      mpz_gcd(gcd.get_mpz_t(), z.get_mpz_t(), st.x0.get_mpz_t());
    } while (sgn(z) == 0 || gcd != 1);
    st.z.push_back(z);
  }
  if (params.symmetric) st.z.assign(params.universe, st.z.front());
  st.z_inv.reserve(st.z.size());
  for (const auto& z : st.z) st.z_inv.push_back(invert(z, st.x0));

  mpz_class h_span;
  mpz_ui_pow_ui(h_span.get_mpz_t(), 2, params.beta);
  h_span -= 1;
  for (std::size_t i = 0; i < n; ++i) st.h.push_back(gen.below(h_span) + 1);

  st.pzt = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const mpz_class& p = st.p[i];
    const mpz_class p_hat = st.x0 / p;
    st.crt_coeffs.push_back(mod_floor(p_hat * invert(mod_floor(p_hat, p), p), st.x0));

    mpz_class z_prod = 1;
    for (const auto& z : st.z) z_prod = mod_floor(z_prod * z, p);
    const mpz_class inner = mod_floor(z_prod * invert(st.g[i], p), p);
    st.pzt += st.h[i] * inner * p_hat;
  }
  st.pzt = mod_floor(st.pzt, st.x0);

  st.rngs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) st.rngs.emplace_back(seed, "cltwe/slot", i);

  CltInstance out{std::move(st), {}, std::nullopt};
  out.pub = out.secret.public_params();

  if (params.symmetric) {
    SecretState& s = out.secret;
    const std::size_t U = params.universe;
    std::vector<std::size_t> first{0};
    const LevelVector level1 = LevelVector::indicator(U, first);
    const LevelVector level0 = LevelVector::zero(U);
    const PlaintextVector zeros{std::vector<mpz_class>(n, 0)};
    const PlaintextVector ones{std::vector<mpz_class>(n, 1)};

    SymmetricPublicEncodings sym;
    sym.kappa = U;
    sym.rho = params.rho;
    sym.alpha = params.alpha;
    for (std::size_t j = 0; j < params.tau; ++j) sym.xs.push_back(encode(s, zeros, level1).elem);
    for (std::size_t j = 0; j < params.ell; ++j) {
      const PlaintextVector a = sample_plaintext(s);
      sym.xps.push_back(encode(s, a, level0).elem);
    }
    sym.y = encode(s, ones, level1).elem;
    out.symmetric = std::move(sym);
  }
  return out;
}

mpz_class crt_reconstruct(const SecretState& state, std::span<const mpz_class> residues) {
  if (residues.size() != state.crt_coeffs.size()) {
    throw ParameterError("crt_reconstruct: wrong number of residues");
  }
  mpz_class acc = 0;
  for (std::size_t i = 0; i < residues.size(); ++i) acc += residues[i] * state.crt_coeffs[i];
  return mod_floor(acc, state.x0);
}

PlaintextVector sample_plaintext(SecretState& state) {
  PlaintextVector m;
  m.slots.reserve(state.g.size());
  for (std::size_t i = 0; i < state.g.size(); ++i) m.slots.push_back(state.rngs[i].below(state.g[i]));
  return m;
}

// ---------------------------------------------------------------------------
// Encoding arithmetic

Encoding encode(SecretState& state, const PlaintextVector& m, const LevelVector& v) {
  const std::size_t n = state.params.n_primes;
  if (m.slots.size() != n) {
    throw ParameterError("plaintext has " + std::to_string(m.slots.size()) + " slots, expected " +
                         std::to_string(n));
  }
  if (v.size() != state.params.universe) throw LevelError("level vector has wrong length");

  std::vector<mpz_class> numerators(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(m.slots[i]) < 0 || m.slots[i] >= state.g[i]) {
      throw ParameterError("plaintext slot " + std::to_string(i) + " outside [0, g_i)");
    }
    numerators[i] = state.rngs[i].signed_bits(state.params.rho) * state.g[i] + m.slots[i];
  }

  Encoding e;
  e.elem = crt_reconstruct(state, numerators);
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != 0) e.elem = mod_floor(e.elem * state.z_inv[j], state.x0);
  }
  e.level = v;
  e.degree = 1;
  return e;
}

Encoding add(const PublicParams& pp, const Encoding& a, const Encoding& b) {
  if (a.level != b.level) throw LevelError("add: operands at different levels");
  return Encoding{mod_floor(a.elem + b.elem, pp.x0), a.level, std::max(a.degree, b.degree)};
}

Encoding neg(const PublicParams& pp, const Encoding& a) {
  return Encoding{mod_floor(-a.elem, pp.x0), a.level, a.degree};
}

Encoding sub(const PublicParams& pp, const Encoding& a, const Encoding& b) {
  return add(pp, a, neg(pp, b));
}

Encoding mul(const PublicParams& pp, const Encoding& a, const Encoding& b) {
  LevelVector level = a.level.checked_sum(b.level);
  const std::size_t degree = a.degree + b.degree;
  if (degree > pp.max_degree()) {
    throw LevelError("mul: multiplicative degree " + std::to_string(degree) + " exceeds " +
                     std::to_string(pp.max_degree()));
  }
  return Encoding{mod_floor(a.elem * b.elem, pp.x0), std::move(level), degree};
}

mpz_class centered_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r = mod_floor(a, m);
  // (-m/2, m/2]: subtract m when 2r > m.
  if (2 * r > m) r -= m;
  return r;
}

bool is_zero(const PublicParams& pp, const Encoding& e) {
  if (e.level.size() != pp.universe || !e.level.is_top()) {
    throw LevelError("is_zero: encoding is not at the top level");
  }
  mpz_class omega = centered_mod(e.elem * pp.pzt, pp.x0);
  mpz_abs(omega.get_mpz_t(), omega.get_mpz_t());
  mpz_mul_2exp(omega.get_mpz_t(), omega.get_mpz_t(), pp.nu);
  return omega < pp.x0;
}

PlaintextVector decode_debug(const SecretState& state, const Encoding& e) {
  const auto& prm = state.params;
  if (e.level.size() != prm.universe) throw LevelError("decode: level vector has wrong length");
  const std::size_t budget = prm.max_degree * (prm.rho + prm.alpha + 1) + 1;

  PlaintextVector m;
  m.slots.reserve(prm.n_primes);
  for (std::size_t i = 0; i < prm.n_primes; ++i) {
    const mpz_class& p = state.p[i];
    mpz_class t = mod_floor(e.elem, p);
    for (std::size_t j = 0; j < e.level.size(); ++j) {
      if (e.level[j] != 0) t = mod_floor(t * state.z[j], p);
    }
    t = centered_mod(t, p);
    if (bit_length(abs(t)) > budget) {
      throw DecodeError("decode unreliable: slot " + std::to_string(i) +
                        " numerator exceeds the noise budget");
    }
    m.slots.push_back(mod_floor(t, state.g[i]));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Serialization

std::string serialize_public_params(const PublicParams& pp) {
  std::ostringstream out;
  out << "CLTPP1\n"
      << "x0=" << to_hex(pp.x0) << '\n'
      << "pzt=" << to_hex(pp.pzt) << '\n'
      << "nu=" << pp.nu << '\n'
      << "U=" << pp.universe << '\n';
  return out.str();
}

namespace detail {

PublicParams read_public_params(TextReader& in) {
  in.expect_line("CLTPP1");
  PublicParams pp;
  pp.x0 = in.keyed_hex("x0");
  pp.pzt = in.keyed_hex("pzt");
  pp.nu = in.keyed_size("nu");
  pp.universe = in.keyed_size("U");
  if (sgn(pp.x0) == 0) in.fail("x0 must be positive");
  if (pp.pzt >= pp.x0) in.fail("pzt not reduced mod x0");
  if (pp.universe == 0) in.fail("U must be positive");
  return pp;
}

}  // namespace detail

PublicParams parse_public_params(std::string_view text) {
  detail::TextReader in(text);
  PublicParams pp = detail::read_public_params(in);
  if (!in.at_end()) in.fail("trailing data after public parameters");
  return pp;
}

std::string serialize_secrets(const SecretState& st) {
  std::ostringstream out;
  const auto& prm = st.params;
  out << "CLTSK1\n"
      << "lambda=" << prm.lambda << "\nU=" << prm.universe << "\nn=" << prm.n_primes
      << "\neta=" << prm.eta << "\nalpha=" << prm.alpha << "\nrho=" << prm.rho
      << "\nbeta=" << prm.beta << "\nnu=" << prm.nu << "\nD=" << prm.max_degree << '\n';
  out << "x0=" << to_hex(st.x0) << "\npzt=" << to_hex(st.pzt) << '\n';
  auto dump = [&out](const char* tag, const std::vector<mpz_class>& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) out << tag << ' ' << i << ' ' << to_hex(xs[i]) << '\n';
  };
  dump("p", st.p);
  dump("g", st.g);
  dump("h", st.h);
  dump("z", st.z);
  dump("zinv", st.z_inv);
  out << "END\n";
  return out.str();
}

}  // namespace cltwe
