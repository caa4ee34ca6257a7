#include <gtest/gtest.h>

#include "cltwe/error.hpp"
#include "cltwe/exact_cover.hpp"
#include "cltwe/rng.hpp"
#include "cltwe/sudoku.hpp"
#include "test_util.hpp"

using namespace cltwe;

namespace {

ExactCoverInstance toy() { return ExactCoverInstance(3, {{0, 1}, {2}, {0, 2}}); }

// Every subset of the family, by bitmask.
std::vector<std::uint32_t> brute_force_covers(const ExactCoverInstance& inst) {
  std::vector<std::uint32_t> out;
  const std::size_t L = inst.set_count();
  for (std::uint32_t mask = 0; mask < (1u << L); ++mask) {
    std::vector<int> hits(inst.universe_size(), 0);
    for (std::size_t i = 0; i < L; ++i) {
      if (mask >> i & 1) {
        for (auto e : inst.set(i)) ++hits[e];
      }
    }
    if (std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; })) out.push_back(mask);
  }
  return out;
}

}  // namespace

TEST(Instance, NormalisesSets) {
  ExactCoverInstance inst(4, {{3, 1, 1}, {}, {0, 2}});
  ASSERT_EQ(inst.set_count(), 2u);
  EXPECT_EQ(inst.set(0), (ElementSet{1, 3}));
  EXPECT_EQ(inst.dropped_empty(), std::vector<std::size_t>{1});
  EXPECT_THROW(ExactCoverInstance(2, {{0, 2}}), ParameterError);
}

TEST(Witness, SortedAndUnique) {
  EXPECT_EQ(Witness({2, 0}).indices(), (std::vector<std::size_t>{0, 2}));
  EXPECT_THROW(Witness({1, 1}), WitnessError);
}

TEST(Verify, ToyExamples) {
  const auto inst = toy();
  EXPECT_TRUE(verify(inst, Witness({0, 1})));
  EXPECT_FALSE(verify(inst, Witness({1, 2})));
  EXPECT_FALSE(verify(inst, Witness({})));
  EXPECT_THROW(verify(inst, Witness({3})), WitnessError);
}

TEST(Solve, ToyExamples) {
  auto r = solve(toy());
  ASSERT_EQ(r.status, SolveStatus::kFound);
  EXPECT_EQ(r.witness->indices(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(brute_force_covers(toy()), std::vector<std::uint32_t>{0b011});

  r = solve(ExactCoverInstance(2, {{0}, {0}}));
  EXPECT_EQ(r.status, SolveStatus::kNoSolution);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(Solve, NodeLimitIsDistinctFromNoSolution) {
  auto [inst, cmap] = sudoku_to_cover(SudokuPuzzle::blank(9));
  const auto r = solve(inst, 5);
  EXPECT_EQ(r.status, SolveStatus::kLimitExceeded);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(Solve, BlankFourByFourSudoku) {
  auto [inst, cmap] = sudoku_to_cover(SudokuPuzzle::blank(4));
  const auto r = solve(inst);
  ASSERT_EQ(r.status, SolveStatus::kFound);
  EXPECT_EQ(r.witness->size(), 16u);
  EXPECT_TRUE(verify(inst, *r.witness));
}

TEST(Solve, AgreesWithBruteForce) {
  AesCtrRng rng(testutil::seed(21), "ec-random", 0);
  int solvable = 0;
  for (int t = 0; t < 150; ++t) {
    const std::size_t U = 1 + rng.below_u64(8);
    const std::size_t L = 1 + rng.below_u64(15);
    std::vector<ElementSet> sets;
    for (std::size_t i = 0; i < L; ++i) {
      ElementSet s;
      for (std::size_t e = 0; e < U; ++e) {
        if (rng.below_u64(3) == 0) s.push_back(e);
      }
      if (s.empty()) s.push_back(rng.below_u64(U));
      sets.push_back(s);
    }
    // Plant a cover half the time.
    if (t % 2 == 0) {
      std::vector<std::size_t> perm(U);
      for (std::size_t e = 0; e < U; ++e) perm[e] = e;
      std::size_t start = 0;
      while (start < U) {
        const std::size_t len = 1 + rng.below_u64(U - start);
        sets.push_back(ElementSet(perm.begin() + start, perm.begin() + start + len));
        start += len;
      }
      while (sets.size() > 15) sets.erase(sets.begin());
    }
    const ExactCoverInstance inst(U, sets);
    const auto covers = brute_force_covers(inst);
    const auto r = solve(inst);
    if (covers.empty()) {
      EXPECT_EQ(r.status, SolveStatus::kNoSolution) << t;
    } else {
      ++solvable;
      ASSERT_EQ(r.status, SolveStatus::kFound) << t;
      std::uint32_t mask = 0;
      std::size_t total = 0;
      for (auto i : r.witness->indices()) {
        mask |= 1u << i;
        total += inst.set(i).size();
      }
      EXPECT_NE(std::find(covers.begin(), covers.end(), mask), covers.end()) << t;
      EXPECT_EQ(total, U);
    }
  }
  EXPECT_GT(solvable, 50);
}

TEST(Solve, Deterministic) {
  auto [inst, cmap] = sudoku_to_cover(SudokuPuzzle::blank(4));
  EXPECT_EQ(solve(inst).witness, solve(inst).witness);
}

TEST(CoverFormat, RoundTrip) {
  const auto inst = toy();
  const std::string text = format_cover(inst);
  EXPECT_EQ(text, "3 3\n0 1\n2\n0 2\n");
  EXPECT_EQ(parse_cover(text), inst);
  EXPECT_EQ(parse_cover("# comment\n3 3\n0 1\n# inner\n2\n0 2\n"), inst);
}

TEST(CoverFormat, Errors) {
  EXPECT_THROW(parse_cover("3 3\n0 1\n2\n"), FormatError);
  EXPECT_THROW(parse_cover("3 3\n0 1\n2\n0 2"), FormatError);
  EXPECT_THROW(parse_cover("3 1\n0 3\n"), FormatError);
  EXPECT_THROW(parse_cover("3 1\n1 0\n"), FormatError);
  EXPECT_THROW(parse_cover("3 1\n0 x\n"), FormatError);
  EXPECT_THROW(parse_cover("3\n0 1\n"), FormatError);
  EXPECT_THROW(parse_cover(""), FormatError);
}

TEST(WitnessFormat, RoundTrip) {
  const Witness w({4, 0, 9});
  EXPECT_EQ(format_witness(w), "0 4 9\n");
  EXPECT_EQ(parse_witness("0 4 9\n"), w);
  EXPECT_EQ(parse_witness("9 0 4"), w);
  EXPECT_EQ(parse_witness("\n"), Witness());
  EXPECT_THROW(parse_witness("1 x\n"), FormatError);
}
