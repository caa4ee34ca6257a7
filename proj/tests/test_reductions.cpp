#include <gtest/gtest.h>

#include <map>
#include <set>

#include "cltwe/error.hpp"
#include "cltwe/pentomino.hpp"
#include "cltwe/rng.hpp"
#include "cltwe/sudoku.hpp"
#include "test_util.hpp"

using namespace cltwe;

namespace {

// Rule check over 1-based values, written without the library helpers.
bool grid_valid(const SudokuPuzzle& g) {
  const std::size_t n = g.n;
  std::size_t b = 1;
  while (b * b < n) ++b;
  for (std::size_t k = 0; k < n; ++k) {
    std::set<std::size_t> row, col, box;
    for (std::size_t t = 0; t < n; ++t) {
      const auto& rv = g.cells[k * n + t];
      const auto& cv = g.cells[t * n + k];
      const auto& bv = g.cells[((k / b) * b + t / b) * n + (k % b) * b + t % b];
      if (!rv || !cv || !bv) return false;
      row.insert(*rv);
      col.insert(*cv);
      box.insert(*bv);
    }
    if (row.size() != n || col.size() != n || box.size() != n) return false;
  }
  return true;
}

// Random 4x4 puzzle: a solved grid from a shuffled blank solve, then holes.
SudokuPuzzle random_puzzle4(AesCtrRng& rng, SudokuPuzzle* solution_out) {
  // Relabel the solver's canonical grid with a random value permutation and
  // a random row swap inside each band.
  auto [inst, cmap] = sudoku_to_cover(SudokuPuzzle::blank(4));
  SudokuPuzzle base = sudoku_from_witness(SudokuPuzzle::blank(4), cmap, *solve(inst).witness);
  std::vector<std::size_t> perm{0, 1, 2, 3};
  for (std::size_t i = 3; i > 0; --i) std::swap(perm[i], perm[rng.below_u64(i + 1)]);
  SudokuPuzzle sol = SudokuPuzzle::blank(4);
  const bool swap_top = rng.below_u64(2), swap_bottom = rng.below_u64(2);
  for (std::size_t r = 0; r < 4; ++r) {
    std::size_t src = r;
    if (swap_top && r < 2) src = 1 - r;
    if (swap_bottom && r >= 2) src = 5 - r;
    for (std::size_t c = 0; c < 4; ++c) sol.at(r, c) = perm[*base.at(src, c)];
  }
  SudokuPuzzle puzzle = sol;
  for (auto& cell : puzzle.cells) {
    if (rng.below_u64(3) != 0) cell.reset();
  }
  if (solution_out) *solution_out = sol;
  return puzzle;
}

using Cell = std::pair<int, int>;

// Orbit of a shape under the 8 symmetries of the square, as canonical cell
// sets, enumerated from the rotation/reflection matrices.
std::set<std::set<Cell>> orbit(const std::vector<Cell>& shape) {
  static const int mats[8][4] = {{1, 0, 0, 1},  {0, -1, 1, 0}, {-1, 0, 0, -1}, {0, 1, -1, 0},
                                 {-1, 0, 0, 1}, {1, 0, 0, -1}, {0, 1, 1, 0},   {0, -1, -1, 0}};
  std::set<std::set<Cell>> out;
  for (const auto& m : mats) {
    std::vector<Cell> t;
    for (auto [r, c] : shape) t.emplace_back(m[0] * r + m[1] * c, m[2] * r + m[3] * c);
    int mr = 1 << 20, mc = 1 << 20;
    for (auto [r, c] : t) {
      mr = std::min(mr, r);
      mc = std::min(mc, c);
    }
    std::set<Cell> s;
    for (auto [r, c] : t) s.emplace(r - mr, c - mc);
    out.insert(s);
  }
  return out;
}

}  // namespace

TEST(Sudoku, TripleIndexAndConstraints) {
  EXPECT_EQ(triple_index(9, 1, 2, 3), 102u);
  EXPECT_EQ(triple_index(4, 3, 3, 3), 63u);
  const auto k = sudoku_constraints(9, 4, 7, 2);
  // cell, row-value, column-value, box-value blocks, 81 apart.
  EXPECT_EQ(k[0], 4u * 9 + 7);
  EXPECT_EQ(k[1], 81u + 4 * 9 + 2);
  EXPECT_EQ(k[2], 162u + 7 * 9 + 2);
  EXPECT_EQ(k[3], 243u + 5 * 9 + 2);  // box (1, 2) = 5
}

TEST(Sudoku, BlankNineByNine) {
  auto [inst, cmap] = sudoku_to_cover(SudokuPuzzle::blank(9));
  EXPECT_EQ(inst.universe_size(), 324u);
  EXPECT_EQ(inst.set_count(), 729u);
  for (const auto& s : inst.sets()) EXPECT_EQ(s.size(), 4u);
}

TEST(Sudoku, NineteenCluesGive248) {
  const auto puzzle = parse_sudoku(testutil::slurp(testutil::data_path("sudoku_19.txt")));
  EXPECT_EQ(puzzle.clue_count(), 19u);
  auto [inst, cmap] = sudoku_to_cover(puzzle);
  EXPECT_EQ(inst.universe_size(), 248u);

  const auto solution = parse_sudoku(testutil::slurp(testutil::data_path("sudoku_19_solution.txt")));
  EXPECT_TRUE(grid_valid(solution));
  const Witness w = sudoku_witness(puzzle, solution, cmap);
  EXPECT_EQ(w.size(), 62u);
  EXPECT_TRUE(verify(inst, w));
  EXPECT_EQ(sudoku_from_witness(puzzle, cmap, w), solution);
}

TEST(Sudoku, BlankFourByFour) {
  auto [inst, cmap] = sudoku_to_cover(SudokuPuzzle::blank(4));
  EXPECT_EQ(inst.universe_size(), 64u);
  EXPECT_EQ(inst.set_count(), 64u);
  const auto r = solve(inst);
  ASSERT_EQ(r.status, SolveStatus::kFound);
  const auto grid = sudoku_from_witness(SudokuPuzzle::blank(4), cmap, *r.witness);
  EXPECT_TRUE(grid_valid(grid));
  const Witness w = sudoku_witness(SudokuPuzzle::blank(4), grid, cmap);
  EXPECT_EQ(w.size(), 16u);
  EXPECT_TRUE(verify(inst, w));
}

TEST(Sudoku, CandidateMapIsInjective) {
  auto [inst, cmap] = sudoku_to_cover(parse_sudoku(testutil::slurp(testutil::data_path("sudoku_4.txt"))));
  std::set<std::size_t> seen;
  for (const auto& f : cmap.forward) {
    if (f) {
      EXPECT_TRUE(seen.insert(*f).second);
    }
  }
  EXPECT_EQ(seen.size(), inst.set_count());
  std::set<std::size_t> targets;
  for (const auto& e : cmap.element_map) {
    if (e) {
      EXPECT_TRUE(targets.insert(*e).second);
    }
  }
  EXPECT_EQ(targets.size(), inst.universe_size());
}

TEST(Sudoku, RandomFourByFourSoundness) {
  AesCtrRng rng(testutil::seed(31), "sudoku4", 0);
  for (int t = 0; t < 30; ++t) {
    SudokuPuzzle solution;
    const SudokuPuzzle puzzle = random_puzzle4(rng, &solution);
    ASSERT_TRUE(grid_valid(solution));
    auto [inst, cmap] = sudoku_to_cover(puzzle);
    EXPECT_EQ(inst.universe_size(), 64u - 4 * puzzle.clue_count());

    const Witness w = sudoku_witness(puzzle, solution, cmap);
    EXPECT_TRUE(verify(inst, w));

    const auto r = solve(inst);
    ASSERT_EQ(r.status, SolveStatus::kFound);
    const SudokuPuzzle filled = sudoku_from_witness(puzzle, cmap, *r.witness);
    EXPECT_TRUE(grid_valid(filled));
    EXPECT_TRUE(sudoku_rules_hold(filled));
    for (std::size_t i = 0; i < 16; ++i) {
      if (puzzle.cells[i]) {
        EXPECT_EQ(filled.cells[i], puzzle.cells[i]);
      }
    }
  }
}

TEST(Sudoku, Errors) {
  SudokuPuzzle p = SudokuPuzzle::blank(4);
  p.at(0, 0) = 1;
  p.at(0, 3) = 1;
  EXPECT_THROW(check_sudoku(p), PuzzleError);
  EXPECT_THROW(sudoku_to_cover(p), PuzzleError);

  const auto puzzle = parse_sudoku(testutil::slurp(testutil::data_path("sudoku_4.txt")));
  auto [inst, cmap] = sudoku_to_cover(puzzle);
  SudokuPuzzle wrong = sudoku_from_witness(puzzle, cmap, *solve(inst).witness);
  // Swapping two values in the first row keeps it complete but breaks a clue
  // or a column.
  std::swap(wrong.at(0, 0), wrong.at(0, 1));
  EXPECT_THROW(sudoku_witness(puzzle, wrong, cmap), SolutionError);
  EXPECT_THROW(sudoku_witness(puzzle, SudokuPuzzle::blank(4), cmap), SolutionError);
}

TEST(Sudoku, UnsolvablePuzzleHasNoCover) {
  const auto puzzle = parse_sudoku(testutil::slurp(testutil::data_path("sudoku_unsolvable.txt")));
  auto [inst, cmap] = sudoku_to_cover(puzzle);
  EXPECT_EQ(solve(inst).status, SolveStatus::kNoSolution);
}

TEST(SudokuFormat, ParseAndRoundTrip) {
  const auto p = parse_sudoku("sudoku 4\n1 . . .\n. . 3 .\n. 4 . .\n. . . 2\n");
  EXPECT_EQ(p.n, 4u);
  EXPECT_EQ(p.clue_count(), 4u);
  EXPECT_EQ(p.at(0, 0), std::optional<std::size_t>(0));
  EXPECT_EQ(p.at(3, 3), std::optional<std::size_t>(1));
  EXPECT_EQ(parse_sudoku(format_sudoku(p)), p);
}

TEST(SudokuFormat, ParseErrorsCarryLine) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_sudoku(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("sudoku 5\n"), 1u);
  EXPECT_EQ(line_of("sudoku 4\n1 . . .\n. . 5 .\n. . . .\n. . . .\n"), 3u);
  EXPECT_EQ(line_of("sudoku 4\n1 . . .\n. . .\n. . . .\n. . . .\n"), 3u);
  EXPECT_NE(line_of("sudoku 4\n1 . . .\n. . . .\n"), 0u);
  EXPECT_NE(line_of("grid 4\n"), 0u);
}

TEST(Pentomino, OrientationTableMatchesOrbits) {
  const std::map<char, std::size_t> expected = {{'O', 2}, {'P', 8}, {'Q', 8}, {'R', 8},
                                                {'S', 8}, {'T', 4}, {'U', 4}, {'V', 4},
                                                {'W', 4}, {'X', 1}, {'Y', 8}, {'Z', 4}};
  std::size_t total = 0;
  for (std::size_t i = 0; i < kPentominoCount; ++i) {
    const auto piece = static_cast<Pentomino>(i);
    const auto& table = orientations(piece);
    EXPECT_EQ(table.size(), expected.at(pentomino_letter(piece)));
    total += table.size();

    std::set<std::set<Cell>> mine;
    for (const auto& s : table) {
      EXPECT_EQ(s.size(), 5u);
      mine.insert(std::set<Cell>(s.begin(), s.end()));
    }
    EXPECT_EQ(mine.size(), table.size());  // duplicate-free
    EXPECT_EQ(mine, orbit(base_shape(piece)));
    // Closed: the orbit of any member is the whole table.
    for (const auto& s : table) EXPECT_EQ(orbit(s), mine);
  }
  EXPECT_EQ(total, 63u);
}

TEST(Pentomino, StraightOneByFive) {
  const auto board = parse_pentomino(testutil::slurp(testutil::data_path("pentomino_straight.txt")));
  const auto pc = pentomino_to_cover(board);
  ASSERT_EQ(pc.instance.set_count(), 1u);
  EXPECT_EQ(pc.instance.set(0), (ElementSet{0, 1, 2, 3, 4, 5}));
  const auto r = solve(pc.instance);
  ASSERT_EQ(r.status, SolveStatus::kFound);
  EXPECT_TRUE(verify(pc.instance, *r.witness));
  EXPECT_EQ(render_tiling(board, pc, *r.witness), "OOOOO\n");
}

TEST(Pentomino, CountingInfeasible) {
  const auto board = parse_pentomino(testutil::slurp(testutil::data_path("pentomino_infeasible.txt")));
  EXPECT_FALSE(board.balanced());
  const auto pc = pentomino_to_cover(board);
  EXPECT_EQ(pc.instance.universe_size(), 11u);
  EXPECT_GT(pc.instance.set_count(), 0u);
  EXPECT_EQ(solve(pc.instance).status, SolveStatus::kNoSolution);
}

TEST(Pentomino, SixByTenAllPieces) {
  const auto board = parse_pentomino(testutil::slurp(testutil::data_path("pentomino_6x10.txt")));
  EXPECT_TRUE(board.balanced());
  const auto pc = pentomino_to_cover(board);
  EXPECT_EQ(pc.instance.universe_size(), 72u);
  std::size_t total = 0;
  for (const auto& s : pc.instance.sets()) {
    EXPECT_EQ(s.size(), 6u);
    total += s.size();
  }
  EXPECT_EQ(total, 6 * pc.instance.set_count());
  const auto r = solve(pc.instance);
  ASSERT_EQ(r.status, SolveStatus::kFound);
  EXPECT_EQ(r.witness->size(), 12u);
  const std::string art = render_tiling(board, pc, *r.witness);
  for (char c : kPentominoLetters) EXPECT_EQ(std::count(art.begin(), art.end(), c), 5) << c;
}

TEST(Pentomino, MultiplicityGivesDistinctInstanceLabels) {
  PentominoBoard b;
  b.rows = 2;
  b.cols = 5;
  b.cells.assign(10, 1);
  b.pieces[static_cast<std::size_t>(Pentomino::O)] = 2;
  const auto pc = pentomino_to_cover(b);
  EXPECT_EQ(pc.instance.universe_size(), 12u);
  EXPECT_EQ(pc.instance.set_count(), 4u);  // 2 placements x 2 instances
  const auto r = solve(pc.instance);
  ASSERT_EQ(r.status, SolveStatus::kFound);
  EXPECT_EQ(r.witness->size(), 2u);
}

TEST(PentominoFormat, ParseAndRoundTrip) {
  const auto b = parse_pentomino("pentomino 2 3\n#.#\n###\npieces O:1 X:2\n");
  EXPECT_EQ(b.rows, 2u);
  EXPECT_EQ(b.cols, 3u);
  EXPECT_EQ(b.cell_count(), 5u);
  EXPECT_EQ(b.pieces[static_cast<std::size_t>(Pentomino::O)], 1u);
  EXPECT_EQ(b.pieces[static_cast<std::size_t>(Pentomino::X)], 2u);
  EXPECT_EQ(b.piece_total(), 3u);
  EXPECT_EQ(parse_pentomino(format_pentomino(b)), b);
}

TEST(PentominoFormat, Errors) {
  EXPECT_THROW(parse_pentomino("pentomino 1 5\n#####\npieces I:1\n"), ParseError);
  EXPECT_THROW(parse_pentomino("pentomino 1 5\n####\npieces O:1\n"), ParseError);
  EXPECT_THROW(parse_pentomino("pentomino 1 5\n##x##\npieces O:1\n"), ParseError);
  EXPECT_THROW(parse_pentomino("pentomino 0 5\npieces O:1\n"), ParseError);
  EXPECT_THROW(parse_pentomino("pentomino 1 5\n#####\n"), ParseError);
}
