#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <vector>

#include "cltwe/clt.hpp"
#include "cltwe/exact_cover.hpp"
#include "cltwe/sudoku.hpp"
#include "cltwe/witness_enc.hpp"
#include "cltwe/zeroizing.hpp"

using namespace cltwe;

namespace {

const std::vector<std::uint8_t> kSeed{0x5e, 0xed};

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(CLTWE_DATA_DIR) + "/" + name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CltInstance make_instance(std::size_t lambda, std::size_t universe) {
  return instance_gen(derive_params(lambda, universe), kSeed);
}

void BM_Encode(benchmark::State& state) {
  const auto universe = static_cast<std::size_t>(state.range(0));
  CltInstance inst = make_instance(12, universe);
  const LevelVector top = LevelVector::top(universe);
  for (auto _ : state) {
    const PlaintextVector m = sample_plaintext(inst.secret);
    benchmark::DoNotOptimize(encode(inst.secret, m, top));
  }
}
BENCHMARK(BM_Encode)->Arg(4)->Arg(16)->Arg(64);

void BM_MulChain(benchmark::State& state) {
  const auto universe = static_cast<std::size_t>(state.range(0));
  CltInstance inst = make_instance(12, universe);
  std::vector<Encoding> fresh;
  for (std::size_t j = 0; j < universe; ++j) {
    const std::size_t member[] = {j};
    fresh.push_back(encode(inst.secret, sample_plaintext(inst.secret),
                           LevelVector::indicator(universe, member)));
  }
  for (auto _ : state) {
    Encoding acc = fresh[0];
    for (std::size_t j = 1; j < universe; ++j) acc = mul(inst.pub, acc, fresh[j]);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_MulChain)->Arg(4)->Arg(16)->Arg(64);

void BM_IsZero(benchmark::State& state) {
  const auto universe = static_cast<std::size_t>(state.range(0));
  CltInstance inst = make_instance(12, universe);
  PlaintextVector zero{std::vector<mpz_class>(inst.secret.params.n_primes, 0)};
  const Encoding e = encode(inst.secret, zero, LevelVector::top(universe));
  for (auto _ : state) benchmark::DoNotOptimize(is_zero(inst.pub, e));
}
BENCHMARK(BM_IsZero)->Arg(4)->Arg(64);

void BM_SolveSudoku19(benchmark::State& state) {
  const auto inst = sudoku_to_cover(parse_sudoku(slurp("sudoku_19.txt"))).first;
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst));
}
BENCHMARK(BM_SolveSudoku19)->Unit(benchmark::kMillisecond);

void BM_EncryptDecrypt4x4(benchmark::State& state) {
  const SudokuPuzzle puzzle = parse_sudoku(slurp("sudoku_4.txt"));
  const auto inst = sudoku_to_cover(puzzle).first;
  const Witness w = *solve(inst).witness;
  const MessageBits msg = MessageBits::from_hex("a5");
  for (auto _ : state) {
    const Ciphertext ct = encrypt(inst, msg, 12, kSeed);
    benchmark::DoNotOptimize(decrypt(ct, w));
  }
}
BENCHMARK(BM_EncryptDecrypt4x4)->Unit(benchmark::kMillisecond);

void BM_AttackCrtAcd(benchmark::State& state) {
  auto inst = CrtAcdInstance::generate(static_cast<std::size_t>(state.range(0)), 64, 16, kSeed);
  for (auto _ : state) benchmark::DoNotOptimize(attack_crt_acd(inst, 3));
}
BENCHMARK(BM_AttackCrtAcd)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_AttackClt(benchmark::State& state) {
  const CltInstance inst = instance_gen(derive_attack_params(12, 3), kSeed);
  for (auto _ : state) benchmark::DoNotOptimize(attack_clt(inst.pub, *inst.symmetric, kSeed, 3));
}
BENCHMARK(BM_AttackClt)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
