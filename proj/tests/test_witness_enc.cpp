#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "cltwe/error.hpp"
#include "cltwe/hex.hpp"
#include "cltwe/witness_enc.hpp"
#include "test_util.hpp"

using namespace cltwe;

namespace {

ExactCoverInstance toy() { return ExactCoverInstance(3, {{0, 1}, {2}, {0, 2}}); }

MessageBits bits(std::initializer_list<int> b) {
  MessageBits m;
  for (int x : b) m.bits.push_back(static_cast<std::uint8_t>(x));
  return m;
}

// Reads a ciphertext following the documented layout line by line, without
// the library parser.
struct RawCiphertext {
  std::size_t lambda = 0;
  std::string x0, pzt;
  std::size_t nu = 0, U = 0, L = 0;
  std::vector<std::vector<std::size_t>> sets;
  std::vector<std::string> c, d;
  std::string seedh;
};

RawCiphertext independent_read(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next = [&] {
    if (!std::getline(in, line)) throw std::runtime_error("short");
    return line;
  };
  auto value = [&](const std::string& key) {
    const std::string l = next();
    if (l.rfind(key + "=", 0) != 0) throw std::runtime_error("expected " + key);
    return l.substr(key.size() + 1);
  };
  RawCiphertext r;
  if (next() != "CLTWE1") throw std::runtime_error("magic");
  r.lambda = std::stoul(value("lambda"));
  if (next() != "CLTPP1") throw std::runtime_error("pp magic");
  r.x0 = value("x0");
  r.pzt = value("pzt");
  r.nu = std::stoul(value("nu"));
  const std::size_t pu = std::stoul(value("U"));
  std::istringstream header(next());
  header >> r.U >> r.L;
  if (pu != r.U) throw std::runtime_error("U mismatch");
  for (std::size_t i = 0; i < r.L; ++i) {
    std::istringstream s(next());
    std::vector<std::size_t> set;
    std::size_t e;
    while (s >> e) set.push_back(e);
    r.sets.push_back(set);
  }
  auto block = [&](const std::string& tag, std::vector<std::string>& out) {
    const std::size_t n = std::stoul(value(tag));
    for (std::size_t i = 0; i < n; ++i) {
      std::istringstream s(next());
      std::string t, hex;
      std::size_t idx;
      s >> t >> idx >> hex;
      if (t != tag || idx != i) throw std::runtime_error("bad " + tag);
      out.push_back(hex);
    }
  };
  block("C", r.c);
  block("D", r.d);
  std::istringstream s(next());
  std::string tag;
  s >> tag >> r.seedh;
  if (tag != "SEEDH") throw std::runtime_error("seedh");
  if (next() != "END") throw std::runtime_error("end");
  if (std::getline(in, line)) throw std::runtime_error("trailing");
  return r;
}

}  // namespace

TEST(MessageBits, Hex) {
  const auto m = MessageBits::from_hex("a5");
  EXPECT_EQ(m.bits, (std::vector<std::uint8_t>{1, 0, 1, 0, 0, 1, 0, 1}));
  EXPECT_EQ(m.to_hex(), "a5");
  EXPECT_EQ(MessageBits::from_hex("DEADbeef").to_hex(), "deadbeef");
  EXPECT_THROW(MessageBits::from_hex(""), ParameterError);
  EXPECT_THROW(MessageBits::from_hex("xy"), ParameterError);
}

TEST(WitnessEncryption, ToyBitOne) {
  const auto ct = encrypt(toy(), bits({1}), 12, testutil::seed(1));
  const auto m = decrypt(ct, Witness({0, 1}));
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->bits, std::vector<std::uint8_t>{1});
}

TEST(WitnessEncryption, ToyBitZero) {
  const auto ct = encrypt(toy(), bits({0}), 12, testutil::seed(2));
  const auto m = decrypt(ct, Witness({0, 1}));
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->bits, std::vector<std::uint8_t>{0});
}

TEST(WitnessEncryption, StructuralRejection) {
  const auto ct = encrypt(toy(), bits({1, 0}), 12, testutil::seed(3));
  EXPECT_FALSE(decrypt(ct, Witness({0, 2})).has_value());  // overlap at 0
  EXPECT_FALSE(decrypt(ct, Witness({})).has_value());
  EXPECT_FALSE(decrypt(ct, Witness({0})).has_value());     // incomplete
  EXPECT_FALSE(decrypt(ct, Witness({0, 1, 2})).has_value());
  EXPECT_THROW(decrypt(ct, Witness({5})), WitnessError);
}

TEST(WitnessEncryption, MultiBitSharesSetEncodings) {
  const auto msg = MessageBits::from_hex("c3a5");
  const auto ct = encrypt(toy(), msg, 12, testutil::seed(4));
  EXPECT_EQ(ct.d.size(), 16u);
  EXPECT_EQ(ct.c.size(), 3u);
  for (std::size_t i = 0; i < ct.c.size(); ++i) {
    EXPECT_EQ(ct.c[i].level, LevelVector::indicator(3, ct.instance.set(i)));
  }
  for (const auto& d : ct.d) EXPECT_TRUE(d.level.is_top());
  const auto m = decrypt(ct, Witness({0, 1}));
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(*m, msg);
}

TEST(WitnessEncryption, BitZeroSoundness) {
  // 200 zero bits over one valid cover, spread across ciphertexts.
  int wrong = 0;
  for (std::uint32_t s = 0; s < 4; ++s) {
    const auto ct = encrypt(toy(), MessageBits::from_hex(std::string(13, '0')), 12, testutil::seed(100 + s));
    const auto m = decrypt(ct, Witness({0, 1}));
    ASSERT_TRUE(m.has_value());
    for (auto b : m->bits) wrong += b;
  }
  EXPECT_EQ(wrong, 0);
}

TEST(WitnessEncryption, DecodesAgainstTrapdoor) {
  // d - c* for a bit-1 position decodes to the zero vector.
  const auto dbg = encrypt_keep_secrets(toy(), bits({1, 0}), 12, testutil::seed(5));
  const auto& ct = dbg.ciphertext;
  const Encoding cstar = mul(ct.pp, ct.c[0], ct.c[1]);
  const auto diff = decode_debug(dbg.secret, sub(ct.pp, ct.d[0], cstar));
  for (const auto& v : diff.slots) EXPECT_EQ(v, 0);
  const auto other = decode_debug(dbg.secret, sub(ct.pp, ct.d[1], cstar));
  EXPECT_FALSE(std::all_of(other.slots.begin(), other.slots.end(), [](const mpz_class& v) { return v == 0; }));
}

TEST(WitnessEncryption, DeterministicAndSeedCommitted) {
  const auto a = encrypt(toy(), bits({1, 0, 1}), 12, testutil::seed(6));
  const auto b = encrypt(toy(), bits({1, 0, 1}), 12, testutil::seed(6));
  EXPECT_EQ(serialize(a), serialize(b));
  const auto seed = testutil::seed(6);
  EXPECT_EQ(a.seed_commitment, sha256(seed));
  EXPECT_EQ(a.lambda, 12u);
  EXPECT_EQ(a.pp.universe, 3u);
}

TEST(WitnessEncryption, UnsolvableInstanceStillEncrypts) {
  const ExactCoverInstance inst(3, {{0, 1}, {0, 2}});
  const auto ct = encrypt(inst, bits({1}), 12, testutil::seed(7));
  EXPECT_FALSE(decrypt(ct, Witness({0, 1})).has_value());
}

TEST(WitnessEncryption, ParameterErrors) {
  EXPECT_THROW(encrypt(toy(), bits({1}), 7, testutil::seed(1)), ParameterError);
  EXPECT_THROW(encrypt(toy(), MessageBits{}, 12, testutil::seed(1)), ParameterError);
  EXPECT_THROW(encrypt(ExactCoverInstance(3, {}), bits({1}), 12, testutil::seed(1)), ParameterError);
}

TEST(Serialization, RoundTripBitExact) {
  const auto ct = encrypt(toy(), MessageBits::from_hex("5a"), 12, testutil::seed(8));
  const std::string text = serialize(ct);
  const Ciphertext back = deserialize(text);
  EXPECT_EQ(back, ct);
  EXPECT_EQ(serialize(back), text);
  EXPECT_EQ(decrypt(back, Witness({0, 1}))->to_hex(), "5a");
}

TEST(Serialization, IndependentReader) {
  const auto ct = encrypt(toy(), bits({1, 1, 0, 1}), 12, testutil::seed(9));
  const RawCiphertext raw = independent_read(serialize(ct));
  EXPECT_EQ(raw.lambda, 12u);
  EXPECT_EQ(raw.x0, ct.pp.x0.get_str(16));
  EXPECT_EQ(raw.pzt, ct.pp.pzt.get_str(16));
  EXPECT_EQ(raw.nu, ct.pp.nu);
  EXPECT_EQ(raw.U, 3u);
  EXPECT_EQ(raw.sets, (std::vector<std::vector<std::size_t>>{{0, 1}, {2}, {0, 2}}));
  ASSERT_EQ(raw.c.size(), 3u);
  ASSERT_EQ(raw.d.size(), 4u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(mpz_class(raw.c[i], 16), ct.c[i].elem);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(mpz_class(raw.d[k], 16), ct.d[k].elem);
  EXPECT_EQ(raw.seedh, bytes_to_hex({ct.seed_commitment.begin(), ct.seed_commitment.end()}));
}

TEST(Serialization, EveryTruncationIsAFormatError) {
  const auto ct = encrypt(toy(), bits({1, 0}), 12, testutil::seed(10));
  const std::string text = serialize(ct);
  for (std::size_t cut = 0; cut < text.size(); ++cut) {
    EXPECT_THROW(deserialize(std::string_view(text).substr(0, cut)), FormatError) << cut;
  }
}

TEST(Serialization, TruncationNamesMissingSection) {
  const auto ct = encrypt(toy(), bits({1}), 12, testutil::seed(11));
  const std::string text = serialize(ct);
  const std::size_t at = text.find("SEEDH");
  try {
    deserialize(std::string_view(text).substr(0, at));
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("SEEDH"), std::string::npos) << e.what();
    EXPECT_EQ(e.offset(), at);
  }
}

TEST(Serialization, Corruption) {
  const auto ct = encrypt(toy(), bits({1}), 12, testutil::seed(12));
  const std::string text = serialize(ct);
  auto expect_format_error = [](std::string t) { EXPECT_THROW(deserialize(t), FormatError) << t; };
  std::string bad = text;
  bad[0] = 'X';
  expect_format_error(bad);
  bad = text;
  bad.replace(bad.find("C 1 "), 4, "C 2 ");
  expect_format_error(bad);
  bad = text;
  bad.replace(bad.find("D=1"), 3, "D=2");
  expect_format_error(bad);
  expect_format_error(text + "extra\n");
  bad = text;
  const std::size_t hex_at = bad.find("C 0 ") + 4;
  bad[hex_at] = 'g';
  expect_format_error(bad);
}

TEST(Serialization, NoSecretMaterial) {
  const auto dbg = encrypt_keep_secrets(toy(), bits({1, 0, 1}), 12, testutil::seed(13));
  const std::string text = serialize(dbg.ciphertext);
  std::set<std::string> tokens;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    tokens.insert(eq == std::string::npos ? tok : tok.substr(eq + 1));
  }
  auto absent = [&](const std::vector<mpz_class>& xs) {
    for (const auto& x : xs) {
      const std::string h = to_hex(x);
      EXPECT_EQ(tokens.count(h), 0u);
      if (h.size() > 16) {
        EXPECT_EQ(text.find(h), std::string::npos);
      }
    }
  };
  absent(dbg.secret.p);
  absent(dbg.secret.g);
  absent(dbg.secret.z);
  absent(dbg.secret.z_inv);
  absent(dbg.secret.h);
}
