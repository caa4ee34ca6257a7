#include "cltwe/witness_enc.hpp"

#include <sstream>

#include "cltwe/error.hpp"
#include "cltwe/hex.hpp"
#include "serial_blocks.hpp"

namespace cltwe {
namespace {

PlaintextVector slot_product(const SecretState& st, std::span<const PlaintextVector> factors,
                             std::span<const std::size_t> which) {
  PlaintextVector out{std::vector<mpz_class>(st.g.size(), 1)};
  for (auto j : which) {
    for (std::size_t i = 0; i < st.g.size(); ++i) {
      out.slots[i] = (out.slots[i] * factors[j].slots[i]) % st.g[i];
    }
  }
  return out;
}

DebugEncryption encrypt_impl(const ExactCoverInstance& instance, const MessageBits& message,
                             std::size_t lambda, std::span<const std::uint8_t> seed) {
  if (instance.universe_size() == 0 || instance.set_count() == 0) {
    throw ParameterError("encrypt: instance needs a non-empty universe and at least one set");
  }
  if (message.bits.empty()) throw ParameterError("encrypt: empty message");
  for (auto b : message.bits) {
    if (b > 1) throw ParameterError("encrypt: message bits must be 0 or 1");
  }

  const std::size_t U = instance.universe_size();
  const SystemParams params = derive_params(lambda, U);
  CltInstance inst = instance_gen(params, seed);
  SecretState& st = inst.secret;

  std::vector<PlaintextVector> a;
  a.reserve(U);
  for (std::size_t j = 0; j < U; ++j) a.push_back(sample_plaintext(st));

  Ciphertext ct;
  ct.lambda = lambda;
  ct.pp = inst.pub;
  ct.instance = instance;
  ct.seed_commitment = sha256(seed);

  ct.c.reserve(instance.set_count());
  for (const auto& s : instance.sets()) {
    ct.c.push_back(encode(st, slot_product(st, a, s), LevelVector::indicator(U, s)));
  }

  std::vector<std::size_t> all(U);
  for (std::size_t j = 0; j < U; ++j) all[j] = j;
  const PlaintextVector target = slot_product(st, a, all);
  const LevelVector top = LevelVector::top(U);

  ct.d.reserve(message.bits.size());
  for (auto bit : message.bits) {
    if (bit == 1) {
      ct.d.push_back(encode(st, target, top));
    } else {
      PlaintextVector r;
      do {
        r = sample_plaintext(st);
      } while (r == target);
      ct.d.push_back(encode(st, r, top));
    }
  }
  return DebugEncryption{std::move(ct), std::move(st)};
}

}  // namespace

MessageBits MessageBits::from_hex(std::string_view hex) {
  if (hex.empty()) throw ParameterError("message hex is empty");
  MessageBits m;
  m.bits.reserve(hex.size() * 4);
  for (char ch : hex) {
    int v;
    if (ch >= '0' && ch <= '9') {
      v = ch - '0';
    } else if (ch >= 'a' && ch <= 'f') {
      v = ch - 'a' + 10;
    } else if (ch >= 'A' && ch <= 'F') {
      v = ch - 'A' + 10;
    } else {
      throw ParameterError(std::string("message hex has non-hex digit '") + ch + "'");
    }
    for (int k = 3; k >= 0; --k) m.bits.push_back(static_cast<std::uint8_t>((v >> k) & 1));
  }
  return m;
}

std::string MessageBits::to_hex() const {
  if (bits.size() % 4 != 0) throw ParameterError("message length is not a multiple of 4 bits");
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    out.push_back(kDigits[bits[i] << 3 | bits[i + 1] << 2 | bits[i + 2] << 1 | bits[i + 3]]);
  }
  return out;
}

Ciphertext encrypt(const ExactCoverInstance& instance, const MessageBits& message,
                   std::size_t lambda, std::span<const std::uint8_t> seed) {
  return encrypt_impl(instance, message, lambda, seed).ciphertext;
}

DebugEncryption encrypt_keep_secrets(const ExactCoverInstance& instance, const MessageBits& message,
                                     std::size_t lambda, std::span<const std::uint8_t> seed) {
  return encrypt_impl(instance, message, lambda, seed);
}

std::optional<MessageBits> decrypt(const Ciphertext& ct, const Witness& witness) {
  const std::size_t U = ct.instance.universe_size();
  std::vector<std::size_t> level_sum(U, 0);
  for (auto i : witness.indices()) {
    if (i >= ct.instance.set_count()) {
      throw WitnessError("witness index " + std::to_string(i) + " out of range (" +
                         std::to_string(ct.instance.set_count()) + " sets)");
    }
    for (auto e : ct.instance.set(i)) ++level_sum[e];
  }
  for (auto s : level_sum) {
    if (s != 1) return std::nullopt;
  }
  if (witness.empty()) return std::nullopt;

  std::optional<Encoding> product;
  try {
    for (auto i : witness.indices()) {
      product = product ? mul(ct.pp, *product, ct.c[i]) : ct.c[i];
    }
  } catch (const LevelError&) {
    return std::nullopt;
  }

  MessageBits out;
  out.bits.reserve(ct.d.size());
  for (const auto& d : ct.d) {
    out.bits.push_back(is_zero(ct.pp, sub(ct.pp, d, *product)) ? 1 : 0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization
//
//   CLTWE1
//   lambda=<dec>
//   CLTPP1 / x0= / pzt= / nu= / U=
//   <U> <L>              exact cover block
//   <L set lines>
//   C=<L>
//   C <i> <hex>          L lines
//   D=<bits>
//   D <k> <hex>          one per bit
//   SEEDH <64 hex>
//   END

std::string serialize(const Ciphertext& ct) {
  std::ostringstream out;
  out << "CLTWE1\n"
      << "lambda=" << ct.lambda << '\n'
      << serialize_public_params(ct.pp) << format_cover(ct.instance);
  out << "C=" << ct.c.size() << '\n';
  for (std::size_t i = 0; i < ct.c.size(); ++i) out << "C " << i << ' ' << to_hex(ct.c[i].elem) << '\n';
  out << "D=" << ct.d.size() << '\n';
  for (std::size_t k = 0; k < ct.d.size(); ++k) out << "D " << k << ' ' << to_hex(ct.d[k].elem) << '\n';
  out << "SEEDH " << bytes_to_hex({ct.seed_commitment.begin(), ct.seed_commitment.end()}) << '\n';
  out << "END\n";
  return out.str();
}

namespace {

mpz_class read_element(detail::TextReader& in, char tag, std::size_t index, const mpz_class& x0) {
  const std::string section = std::string(1, tag) + " " + std::to_string(index);
  auto toks = detail::split_ws(in.line(section));
  if (toks.size() != 3 || toks[0] != std::string_view(&tag, 1)) in.fail("expected '" + section + " <hex>'");
  auto idx = detail::parse_size(toks[1]);
  if (!idx || *idx != index) in.fail("expected index " + std::to_string(index));
  mpz_class v;
  try {
    v = mpz_from_hex(toks[2]);
  } catch (const std::invalid_argument& e) {
    in.fail(section + ": " + e.what());
  }
  if (v >= x0) in.fail(section + ": element not reduced mod x0");
  return v;
}

}  // namespace

Ciphertext deserialize(std::string_view text) {
  detail::TextReader in(text);
  in.expect_line("CLTWE1");
  Ciphertext ct;
  ct.lambda = in.keyed_size("lambda");
  ct.pp = detail::read_public_params(in);
  ct.instance = detail::read_cover(in);
  if (!ct.instance.dropped_empty().empty()) in.fail("ciphertext cover block contains an empty set");
  if (ct.instance.universe_size() != ct.pp.universe) {
    in.fail("cover universe does not match public parameter U");
  }

  const std::size_t U = ct.pp.universe;
  const std::size_t sets = in.keyed_size("C");
  if (sets != ct.instance.set_count()) in.fail("C count does not match the number of sets");
  for (std::size_t i = 0; i < sets; ++i) {
    ct.c.push_back(Encoding{read_element(in, 'C', i, ct.pp.x0),
                            LevelVector::indicator(U, ct.instance.set(i)), 1});
  }
  const std::size_t bits = in.keyed_size("D");
  if (bits == 0) in.fail("ciphertext carries no message bits");
  for (std::size_t k = 0; k < bits; ++k) {
    ct.d.push_back(Encoding{read_element(in, 'D', k, ct.pp.x0), LevelVector::top(U), 1});
  }

  auto toks = detail::split_ws(in.line("SEEDH"));
  if (toks.size() != 2 || toks[0] != "SEEDH" || toks[1].size() != 64) in.fail("expected 'SEEDH <64 hex>'");
  std::vector<std::uint8_t> digest;
  try {
    digest = bytes_from_hex(toks[1]);
  } catch (const std::invalid_argument& e) {
    in.fail(std::string("SEEDH: ") + e.what());
  }
  for (char ch : toks[1]) {
    if (ch >= 'A' && ch <= 'F') in.fail("SEEDH must be lowercase hex");
  }
  std::copy(digest.begin(), digest.end(), ct.seed_commitment.begin());

  in.expect_line("END");
  if (!in.at_end()) in.fail("trailing data after END");
  return ct;
}

}  // namespace cltwe
