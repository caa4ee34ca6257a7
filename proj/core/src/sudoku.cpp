#include "cltwe/sudoku.hpp"

#include <charconv>
#include <sstream>

#include "cltwe/error.hpp"
#include "text_reader.hpp"

namespace cltwe {
namespace {

std::size_t isqrt(std::size_t n) {
  std::size_t b = 0;
  while ((b + 1) * (b + 1) <= n) ++b;
  return b;
}

}  // namespace

std::size_t SudokuPuzzle::box_side() const { return isqrt(n); }

std::size_t SudokuPuzzle::clue_count() const {
  std::size_t k = 0;
  for (const auto& c : cells) k += c.has_value();
  return k;
}

bool SudokuPuzzle::complete() const {
  for (const auto& c : cells) {
    if (!c) return false;
  }
  return true;
}

SudokuPuzzle SudokuPuzzle::blank(std::size_t n) {
  return SudokuPuzzle{n, std::vector<std::optional<std::size_t>>(n * n)};
}

std::size_t triple_index(std::size_t n, std::size_t r, std::size_t c, std::size_t v) {
  return r * n * n + c * n + v;
}

std::array<std::size_t, 4> sudoku_constraints(std::size_t n, std::size_t r, std::size_t c,
                                              std::size_t v) {
  const std::size_t b = isqrt(n);
  const std::size_t block = n * n;
  const std::size_t box = (r / b) * b + c / b;
  return {n * r + c, block + r * n + v, 2 * block + c * n + v, 3 * block + box * n + v};
}

void check_sudoku(const SudokuPuzzle& puzzle) {
  const std::size_t n = puzzle.n;
  const std::size_t b = isqrt(n);
  if (b < 2 || b * b != n) throw PuzzleError("side length must be a perfect square >= 4");
  if (puzzle.cells.size() != n * n) throw PuzzleError("grid has wrong number of cells");

  std::vector<std::uint8_t> used(4 * n * n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto& cell = puzzle.at(r, c);
      if (!cell) continue;
      if (*cell >= n) throw PuzzleError("clue value out of range");
      for (auto k : sudoku_constraints(n, r, c, *cell)) {
        if (used[k]++ != 0) {
          throw PuzzleError("clue " + std::to_string(*cell + 1) + " at row " + std::to_string(r + 1) +
                            ", column " + std::to_string(c + 1) + " conflicts with another clue");
        }
      }
    }
  }
}

std::pair<ExactCoverInstance, CandidateMap> sudoku_to_cover(const SudokuPuzzle& puzzle) {
  check_sudoku(puzzle);
  const std::size_t n = puzzle.n;
  const std::size_t b = puzzle.box_side();
  const std::size_t candidates = n * n * n;

  std::vector<std::uint8_t> bad(candidates, 0);
  std::vector<std::uint8_t> satisfied(4 * n * n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!puzzle.at(r, c)) continue;
      const std::size_t v = *puzzle.at(r, c);
      for (std::size_t x = 0; x < n; ++x) {
        bad[triple_index(n, r, c, x)] = 1;
        bad[triple_index(n, r, x, v)] = 1;
        bad[triple_index(n, x, c, v)] = 1;
        bad[triple_index(n, (r / b) * b + x / b, (c / b) * b + x % b, v)] = 1;
      }
      for (auto k : sudoku_constraints(n, r, c, v)) satisfied[k] = 1;
    }
  }

  CandidateMap cmap;
  cmap.n = n;
  cmap.forward.assign(candidates, std::nullopt);
  cmap.element_map.assign(4 * n * n, std::nullopt);
  std::size_t next_elem = 0;
  for (std::size_t k = 0; k < satisfied.size(); ++k) {
    if (!satisfied[k]) cmap.element_map[k] = next_elem++;
  }

  std::vector<ElementSet> sets;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t v = 0; v < n; ++v) {
        if (bad[triple_index(n, r, c, v)]) continue;
        ElementSet s;
        for (auto k : sudoku_constraints(n, r, c, v)) s.push_back(*cmap.element_map[k]);
        cmap.forward[triple_index(n, r, c, v)] = sets.size();
        cmap.triples.push_back({r, c, v});
        sets.push_back(std::move(s));
      }
    }
  }
  return {ExactCoverInstance(next_elem, std::move(sets)), std::move(cmap)};
}

bool sudoku_rules_hold(const SudokuPuzzle& grid) {
  const std::size_t n = grid.n;
  const std::size_t b = isqrt(n);
  if (b < 2 || b * b != n || grid.cells.size() != n * n) return false;
  std::vector<std::uint8_t> seen(4 * n * n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto& cell = grid.at(r, c);
      if (!cell || *cell >= n) return false;
      for (auto k : sudoku_constraints(n, r, c, *cell)) {
        if (seen[k]++ != 0) return false;
      }
    }
  }
  return true;
}

Witness sudoku_witness(const SudokuPuzzle& puzzle, const SudokuPuzzle& solution,
                       const CandidateMap& cmap) {
  const std::size_t n = puzzle.n;
  if (solution.n != n || cmap.n != n) throw SolutionError("solution size does not match puzzle");
  if (!sudoku_rules_hold(solution)) throw SolutionError("solution grid breaks a Sudoku rule");

  std::vector<std::size_t> idx;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t v = *solution.at(r, c);
      if (puzzle.at(r, c)) {
        if (*puzzle.at(r, c) != v) {
          throw SolutionError("solution contradicts the clue at row " + std::to_string(r + 1) +
                              ", column " + std::to_string(c + 1));
        }
        continue;
      }
      const auto& set = cmap.forward[triple_index(n, r, c, v)];
      if (!set) throw SolutionError("solution places a value the clues rule out");
      idx.push_back(*set);
    }
  }
  return Witness(std::move(idx));
}

SudokuPuzzle sudoku_from_witness(const SudokuPuzzle& puzzle, const CandidateMap& cmap,
                                 const Witness& witness) {
  SudokuPuzzle grid = puzzle;
  for (auto i : witness.indices()) {
    if (i >= cmap.triples.size()) throw WitnessError("witness index out of range");
    const auto& t = cmap.triples[i];
    grid.at(t.row, t.col) = t.value;
  }
  return grid;
}

SudokuPuzzle parse_sudoku(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    std::string_view l = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (!l.empty() && l.front() == '#') continue;
    if (detail::split_ws(l).empty()) continue;
    lines.emplace_back(line_no, l);
  }
  if (lines.empty()) throw ParseError("empty sudoku file", 1);

  auto header = detail::split_ws(lines[0].second);
  if (header.size() != 2 || header[0] != "sudoku") {
    throw ParseError("expected header 'sudoku n'", lines[0].first);
  }
  auto n = detail::parse_size(header[1]);
  if (!n) throw ParseError("bad side length", lines[0].first);
  const std::size_t b = isqrt(*n);
  if (b < 2 || b * b != *n) {
    throw ParseError("side length " + std::to_string(*n) + " is not a perfect square >= 4",
                     lines[0].first);
  }
  if (lines.size() != *n + 1) {
    throw ParseError("expected " + std::to_string(*n) + " grid rows, found " +
                         std::to_string(lines.size() - 1),
                     lines.back().first);
  }

  SudokuPuzzle puzzle = SudokuPuzzle::blank(*n);
  for (std::size_t r = 0; r < *n; ++r) {
    const auto [ln, l] = lines[r + 1];
    auto toks = detail::split_ws(l);
    if (toks.size() != *n) {
      throw ParseError("expected " + std::to_string(*n) + " cells, found " + std::to_string(toks.size()), ln);
    }
    for (std::size_t c = 0; c < *n; ++c) {
      if (toks[c] == ".") continue;
      auto v = detail::parse_size(toks[c]);
      if (!v || *v < 1 || *v > *n) {
        throw ParseError("cell value '" + std::string(toks[c]) + "' outside 1.." + std::to_string(*n), ln);
      }
      puzzle.at(r, c) = *v - 1;
    }
  }
  check_sudoku(puzzle);
  return puzzle;
}

std::string format_sudoku(const SudokuPuzzle& puzzle) {
  std::ostringstream out;
  out << "sudoku " << puzzle.n << '\n';
  for (std::size_t r = 0; r < puzzle.n; ++r) {
    for (std::size_t c = 0; c < puzzle.n; ++c) {
      if (c) out << ' ';
      const auto& cell = puzzle.at(r, c);
      if (cell) {
        out << *cell + 1;
      } else {
        out << '.';
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace cltwe
