#include "cltwe/pentomino.hpp"

#include <algorithm>
#include <sstream>

#include "cltwe/error.hpp"
#include "text_reader.hpp"

namespace cltwe {
namespace {

Shape shape_from_rows(std::initializer_list<std::string_view> rows) {
  Shape s;
  int r = 0;
  for (auto row : rows) {
    for (int c = 0; c < static_cast<int>(row.size()); ++c) {
      if (row[c] == '#') s.emplace_back(r, c);
    }
    ++r;
  }
  return normalize(std::move(s));
}

const std::array<Shape, kPentominoCount>& base_shapes() {
  static const std::array<Shape, kPentominoCount> shapes = {
      shape_from_rows({"#####"}),                // O
      shape_from_rows({"##", "##", "#."}),       // P
      shape_from_rows({"#.", "#.", "#.", "##"}), // Q
      shape_from_rows({".##", "##.", ".#."}),    // R
      shape_from_rows({"##..", ".###"}),         // S
      shape_from_rows({"###", ".#.", ".#."}),    // T
      shape_from_rows({"#.#", "###"}),           // U
      shape_from_rows({"#..", "#..", "###"}),    // V
      shape_from_rows({"#..", "##.", ".##"}),    // W
      shape_from_rows({".#.", "###", ".#."}),    // X
      shape_from_rows({".#..", "####"}),         // Y
      shape_from_rows({"##.", ".#.", ".##"}),    // Z
  };
  return shapes;
}

std::array<std::vector<Shape>, kPentominoCount> build_orientations() {
  std::array<std::vector<Shape>, kPentominoCount> out;
  for (std::size_t p = 0; p < kPentominoCount; ++p) {
    for (int reflect = 0; reflect < 2; ++reflect) {
      Shape s = base_shapes()[p];
      if (reflect) {
        for (auto& [r, c] : s) c = -c;
      }
      for (int rot = 0; rot < 4; ++rot) {
        Shape n = normalize(s);
        if (std::find(out[p].begin(), out[p].end(), n) == out[p].end()) out[p].push_back(n);
        for (auto& [r, c] : s) {
          const int t = r;
          r = c;
          c = -t;
        }
      }
    }
  }
  return out;
}

}  // namespace

char pentomino_letter(Pentomino p) { return kPentominoLetters[static_cast<std::size_t>(p)]; }

std::optional<Pentomino> pentomino_from_letter(char c) {
  for (std::size_t i = 0; i < kPentominoCount; ++i) {
    if (kPentominoLetters[i] == c) return static_cast<Pentomino>(i);
  }
  return std::nullopt;
}

Shape normalize(Shape cells) {
  int min_r = cells.front().first, min_c = cells.front().second;
  for (const auto& [r, c] : cells) {
    min_r = std::min(min_r, r);
    min_c = std::min(min_c, c);
  }
  for (auto& [r, c] : cells) {
    r -= min_r;
    c -= min_c;
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

const Shape& base_shape(Pentomino p) { return base_shapes()[static_cast<std::size_t>(p)]; }

const std::vector<Shape>& orientations(Pentomino p) {
  static const auto table = build_orientations();
  return table[static_cast<std::size_t>(p)];
}

std::size_t PentominoBoard::cell_count() const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

std::size_t PentominoBoard::piece_total() const {
  std::size_t t = 0;
  for (auto k : pieces) t += k;
  return t;
}

PentominoCover pentomino_to_cover(const PentominoBoard& board) {
  PentominoCover out;
  std::vector<std::optional<std::size_t>> label(board.rows * board.cols);
  for (std::size_t r = 0; r < board.rows; ++r) {
    for (std::size_t c = 0; c < board.cols; ++c) {
      if (!board.open(r, c)) continue;
      label[r * board.cols + c] = out.cell_of.size();
      out.cell_of.emplace_back(r, c);
    }
  }
  const std::size_t open_cells = out.cell_of.size();

  std::vector<ElementSet> sets;
  std::size_t instance = 0;
  for (std::size_t p = 0; p < kPentominoCount; ++p) {
    if (board.pieces[p] == 0) continue;
    const auto piece = static_cast<Pentomino>(p);

    // Placements of one piece type, shared by all of its instances.
    std::vector<std::pair<Placement, ElementSet>> templ;
    const auto& orients = orientations(piece);
    for (std::size_t o = 0; o < orients.size(); ++o) {
      const Shape& shape = orients[o];
      std::size_t h = 0, w = 0;
      for (const auto& [r, c] : shape) {
        h = std::max(h, static_cast<std::size_t>(r) + 1);
        w = std::max(w, static_cast<std::size_t>(c) + 1);
      }
      if (h > board.rows || w > board.cols) continue;
      for (std::size_t r0 = 0; r0 + h <= board.rows; ++r0) {
        for (std::size_t c0 = 0; c0 + w <= board.cols; ++c0) {
          ElementSet s;
          bool fits = true;
          for (const auto& [r, c] : shape) {
            const auto& l = label[(r0 + r) * board.cols + c0 + c];
            if (!l) {
              fits = false;
              break;
            }
            s.push_back(*l);
          }
          if (!fits) continue;
          std::sort(s.begin(), s.end());
          templ.push_back({Placement{piece, 0, o, r0, c0}, std::move(s)});
        }
      }
    }

    for (std::size_t k = 0; k < board.pieces[p]; ++k, ++instance) {
      for (const auto& [pl, cells] : templ) {
        ElementSet s = cells;
        s.push_back(open_cells + instance);
        Placement placed = pl;
        placed.instance = instance;
        out.placements.push_back(placed);
        sets.push_back(std::move(s));
      }
    }
  }
  out.instance = ExactCoverInstance(open_cells + board.piece_total(), std::move(sets));
  return out;
}

PentominoBoard parse_pentomino(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    std::string_view l = text.substr(pos, nl - pos);
    pos = nl + 1;
    while (!l.empty() && (l.back() == '\r' || l.back() == ' ' || l.back() == '\t')) l.remove_suffix(1);
    // '#' is a board cell here, so this format has no comment lines.
    if (l.empty()) continue;
    lines.emplace_back(line_no, l);
  }
  if (lines.empty()) throw ParseError("empty pentomino file", 1);

  auto header = detail::split_ws(lines[0].second);
  if (header.size() != 3 || header[0] != "pentomino") {
    throw ParseError("expected header 'pentomino rows cols'", lines[0].first);
  }
  auto rows = detail::parse_size(header[1]);
  auto cols = detail::parse_size(header[2]);
  if (!rows || !cols || *rows == 0 || *cols == 0) throw ParseError("bad board dimensions", lines[0].first);
  if (lines.size() != *rows + 2) {
    throw ParseError("expected " + std::to_string(*rows) + " grid rows and a pieces line",
                     lines.back().first);
  }

  PentominoBoard board;
  board.rows = *rows;
  board.cols = *cols;
  board.cells.assign(*rows * *cols, 0);
  for (std::size_t r = 0; r < *rows; ++r) {
    const auto [ln, l] = lines[r + 1];
    if (l.size() != *cols) {
      throw ParseError("grid row has " + std::to_string(l.size()) + " cells, expected " +
                           std::to_string(*cols),
                       ln);
    }
    for (std::size_t c = 0; c < *cols; ++c) {
      if (l[c] == '#') {
        board.cells[r * *cols + c] = 1;
      } else if (l[c] != '.') {
        throw ParseError(std::string("grid cell '") + l[c] + "' is neither '#' nor '.'", ln);
      }
    }
  }

  const auto [pln, pl] = lines.back();
  auto toks = detail::split_ws(pl);
  if (toks.empty() || toks[0] != "pieces") throw ParseError("expected 'pieces' line", pln);
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const auto t = toks[i];
    if (t.size() < 3 || t[1] != ':') throw ParseError("bad piece entry '" + std::string(t) + "'", pln);
    auto piece = pentomino_from_letter(t[0]);
    if (!piece) throw ParseError(std::string("unknown piece letter '") + t[0] + "'", pln);
    auto count = detail::parse_size(t.substr(2));
    if (!count) throw ParseError("bad piece count '" + std::string(t) + "'", pln);
    board.pieces[static_cast<std::size_t>(*piece)] += *count;
  }
  return board;
}

std::string format_pentomino(const PentominoBoard& board) {
  std::ostringstream out;
  out << "pentomino " << board.rows << ' ' << board.cols << '\n';
  for (std::size_t r = 0; r < board.rows; ++r) {
    for (std::size_t c = 0; c < board.cols; ++c) out << (board.open(r, c) ? '#' : '.');
    out << '\n';
  }
  out << "pieces";
  for (std::size_t p = 0; p < kPentominoCount; ++p) {
    if (board.pieces[p] != 0) out << ' ' << kPentominoLetters[p] << ':' << board.pieces[p];
  }
  out << '\n';
  return out.str();
}

std::string render_tiling(const PentominoBoard& board, const PentominoCover& cover,
                          const Witness& witness) {
  std::string grid;
  for (std::size_t r = 0; r < board.rows; ++r) {
    for (std::size_t c = 0; c < board.cols; ++c) grid.push_back(board.open(r, c) ? '?' : '.');
    grid.push_back('\n');
  }
  for (auto i : witness.indices()) {
    const Placement& pl = cover.placements.at(i);
    for (const auto& [r, c] : orientations(pl.piece)[pl.orientation]) {
      grid[(pl.row + r) * (board.cols + 1) + pl.col + c] = pentomino_letter(pl.piece);
    }
  }
  return grid;
}

}  // namespace cltwe
