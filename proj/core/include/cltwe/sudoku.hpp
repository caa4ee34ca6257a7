#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cltwe/exact_cover.hpp"

namespace cltwe {

// n x n grid (n = b^2, b >= 2) with 0-based values; std::nullopt is an empty
// cell. Files use 1..n and '.'.
struct SudokuPuzzle {
  std::size_t n = 0;
  std::vector<std::optional<std::size_t>> cells;  // row-major

  std::size_t box_side() const;
  const std::optional<std::size_t>& at(std::size_t r, std::size_t c) const { return cells[r * n + c]; }
  std::optional<std::size_t>& at(std::size_t r, std::size_t c) { return cells[r * n + c]; }
  std::size_t clue_count() const;
  bool complete() const;

  static SudokuPuzzle blank(std::size_t n);

  bool operator==(const SudokuPuzzle&) const = default;
};

struct SudokuTriple {
  std::size_t row = 0, col = 0, value = 0;
  bool operator==(const SudokuTriple&) const = default;
};

// Candidate (r, c, v) before trimming: r*n^2 + c*n + v.
std::size_t triple_index(std::size_t n, std::size_t r, std::size_t c, std::size_t v);

// The four constraints satisfied by placing v at (r, c), as indices into the
// 4n^2 constraint universe: cell, row-value, column-value, box-value blocks,
// n^2 apart.
std::array<std::size_t, 4> sudoku_constraints(std::size_t n, std::size_t r, std::size_t c,
                                              std::size_t v);

struct CandidateMap {
  std::size_t n = 0;
  // triple_index -> set index in the trimmed instance
  std::vector<std::optional<std::size_t>> forward;
  // original constraint (0..4n^2-1) -> compacted universe index
  std::vector<std::optional<std::size_t>> element_map;
  // set index -> triple
  std::vector<SudokuTriple> triples;
};

// Throws PuzzleError if n is not a square >= 4, a clue is out of range, or
// two clues conflict.
void check_sudoku(const SudokuPuzzle& puzzle);

// Drops every candidate that conflicts with a clue (and the clue candidates
// themselves) plus the 4 constraints each clue satisfies, then compacts the
// surviving constraints. For a conflict-free puzzle U = 4n^2 - 4k.
std::pair<ExactCoverInstance, CandidateMap> sudoku_to_cover(const SudokuPuzzle& puzzle);

// Set indices of every non-clue cell of `solution`. Throws SolutionError if the
// solution is incomplete, breaks a rule or disagrees with a clue.
Witness sudoku_witness(const SudokuPuzzle& puzzle, const SudokuPuzzle& solution,
                       const CandidateMap& cmap);

// Fills the puzzle's empty cells from a cover of its reduction.
SudokuPuzzle sudoku_from_witness(const SudokuPuzzle& puzzle, const CandidateMap& cmap,
                                 const Witness& witness);

// True iff every cell is filled and all four rule families hold.
bool sudoku_rules_hold(const SudokuPuzzle& grid);

// "sudoku n", then n lines of n tokens '.' or 1..n.
SudokuPuzzle parse_sudoku(std::string_view text);
std::string format_sudoku(const SudokuPuzzle& puzzle);

}  // namespace cltwe
