#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cltwe/exact_cover.hpp"

namespace cltwe {

// Conway labels. O is the straight piece, Q the L, R the F, S the N.
enum class Pentomino : std::uint8_t { O, P, Q, R, S, T, U, V, W, X, Y, Z };

inline constexpr std::size_t kPentominoCount = 12;
inline constexpr std::array<char, kPentominoCount> kPentominoLetters = {
    'O', 'P', 'Q', 'R', 'S', 'T', 'U', 'V', 'W', 'X', 'Y', 'Z'};

char pentomino_letter(Pentomino p);
std::optional<Pentomino> pentomino_from_letter(char c);

// Cells as (row, col), translated so the minimum row and column are 0, sorted.
using Shape = std::vector<std::pair<int, int>>;

const Shape& base_shape(Pentomino p);
// Every distinct rotation and reflection of the piece, in a fixed order.
const std::vector<Shape>& orientations(Pentomino p);
Shape normalize(Shape cells);

struct PentominoBoard {
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint8_t> cells;  // row-major, 1 = must be covered
  std::array<std::size_t, kPentominoCount> pieces{};

  bool open(std::size_t r, std::size_t c) const { return cells[r * cols + c] != 0; }
  std::size_t cell_count() const;
  std::size_t piece_total() const;
  // 5 * pieces == open cells; unbalanced boards still reduce, they just have no cover.
  bool balanced() const { return cell_count() == 5 * piece_total(); }

  bool operator==(const PentominoBoard&) const = default;
};

struct Placement {
  Pentomino piece = Pentomino::O;
  std::size_t instance = 0;     // piece-instance label minus the open-cell count
  std::size_t orientation = 0;  // index into orientations(piece)
  std::size_t row = 0, col = 0;  // translation of the oriented shape
};

struct PentominoCover {
  ExactCoverInstance instance;
  std::vector<Placement> placements;                        // one per set
  std::vector<std::pair<std::size_t, std::size_t>> cell_of;  // cell label -> (row, col)
};

// Universe = open cells (labelled row-major) + piece instances. Every in-bounds
// placement of every orientation of each piece instance lying on open cells
// becomes the 6-element set {5 cell labels, piece-instance label}.
PentominoCover pentomino_to_cover(const PentominoBoard& board);

// "pentomino rows cols", the grid in '#' / '.', then "pieces O:<k> ...".
PentominoBoard parse_pentomino(std::string_view text);
std::string format_pentomino(const PentominoBoard& board);

// Renders a cover as a grid of piece letters ('.' for holes).
std::string render_tiling(const PentominoBoard& board, const PentominoCover& cover,
                          const Witness& witness);

}  // namespace cltwe
