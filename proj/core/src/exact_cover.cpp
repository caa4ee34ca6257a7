#include "cltwe/exact_cover.hpp"

#include <algorithm>
#include <sstream>

#include "cltwe/error.hpp"
#include "serial_blocks.hpp"

namespace cltwe {

ExactCoverInstance::ExactCoverInstance(std::size_t universe, std::vector<ElementSet> sets)
    : universe_(universe) {
  sets_.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    ElementSet s = std::move(sets[i]);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && s.back() >= universe) {
      throw ParameterError("set " + std::to_string(i) + " contains element " +
                           std::to_string(s.back()) + " outside universe of size " +
                           std::to_string(universe));
    }
    if (s.empty()) {
      dropped_empty_.push_back(i);
      continue;
    }
    sets_.push_back(std::move(s));
  }
}

Witness::Witness(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw WitnessError("witness repeats a set index");
  }
}

bool verify(const ExactCoverInstance& instance, const Witness& witness) {
  std::vector<std::uint8_t> hit(instance.universe_size(), 0);
  bool disjoint = true;
  for (auto i : witness.indices()) {
    if (i >= instance.set_count()) {
      throw WitnessError("witness index " + std::to_string(i) + " out of range");
    }
    for (auto e : instance.set(i)) {
      if (hit[e]++ != 0) disjoint = false;
    }
  }
  return disjoint && std::all_of(hit.begin(), hit.end(), [](auto h) { return h == 1; });
}

// ---------------------------------------------------------------------------
// Dancing links

namespace {

class Dlx {
 public:
  explicit Dlx(const ExactCoverInstance& inst) {
    const std::size_t cols = inst.universe_size();
    const std::size_t total = 1 + cols + [&] {
      std::size_t n = 0;
      for (const auto& s : inst.sets()) n += s.size();
      return n;
    }();
    left_.resize(total);
    right_.resize(total);
    up_.resize(total);
    down_.resize(total);
    col_.resize(total);
    row_.resize(total);
    size_.assign(cols + 1, 0);

    // Node 0 is the root, nodes 1..cols are column headers for elements 0..cols-1.
    for (std::size_t c = 0; c <= cols; ++c) {
      left_[c] = c == 0 ? cols : c - 1;
      right_[c] = c == cols ? 0 : c + 1;
      up_[c] = down_[c] = c;
      col_[c] = c;
    }
    std::size_t next = cols + 1;
    for (std::size_t r = 0; r < inst.set_count(); ++r) {
      std::size_t first = next;
      for (auto e : inst.set(r)) {
        const std::size_t c = e + 1;
        const std::size_t x = next++;
        col_[x] = c;
        row_[x] = r;
        up_[x] = up_[c];
        down_[x] = c;
        down_[up_[c]] = x;
        up_[c] = x;
        ++size_[c];
        if (x == first) {
          left_[x] = right_[x] = x;
        } else {
          left_[x] = left_[first];
          right_[x] = first;
          right_[left_[first]] = x;
          left_[first] = x;
        }
      }
    }
  }

  SolveResult run(std::uint64_t limit) {
    limit_ = limit;
    SolveResult out;
    const Outcome o = search();
    out.nodes = nodes_;
    if (o == Outcome::kFound) {
      out.status = SolveStatus::kFound;
      out.witness = Witness(chosen_);
    } else {
      out.status = o == Outcome::kLimit ? SolveStatus::kLimitExceeded : SolveStatus::kNoSolution;
    }
    return out;
  }

 private:
  enum class Outcome { kFound, kExhausted, kLimit };

  void cover(std::size_t c) {
    right_[left_[c]] = right_[c];
    left_[right_[c]] = left_[c];
    for (std::size_t i = down_[c]; i != c; i = down_[i]) {
      for (std::size_t j = right_[i]; j != i; j = right_[j]) {
        down_[up_[j]] = down_[j];
        up_[down_[j]] = up_[j];
        --size_[col_[j]];
      }
    }
  }

  void uncover(std::size_t c) {
    for (std::size_t i = up_[c]; i != c; i = up_[i]) {
      for (std::size_t j = left_[i]; j != i; j = left_[j]) {
        ++size_[col_[j]];
        down_[up_[j]] = j;
        up_[down_[j]] = j;
      }
    }
    right_[left_[c]] = c;
    left_[right_[c]] = c;
  }

  Outcome search() {
    if (right_[0] == 0) return Outcome::kFound;

    std::size_t best = right_[0];
    for (std::size_t c = right_[0]; c != 0; c = right_[c]) {
      if (size_[c] < size_[best]) best = c;
    }
    if (size_[best] == 0) return Outcome::kExhausted;

    cover(best);
    for (std::size_t r = down_[best]; r != best; r = down_[r]) {
      if (nodes_ >= limit_) {
        uncover(best);
        return Outcome::kLimit;
      }
      ++nodes_;
      chosen_.push_back(row_[r]);
      for (std::size_t j = right_[r]; j != r; j = right_[j]) cover(col_[j]);

      const Outcome o = search();
      if (o == Outcome::kFound) return o;

      for (std::size_t j = left_[r]; j != r; j = left_[j]) uncover(col_[j]);
      chosen_.pop_back();
      if (o == Outcome::kLimit) {
        uncover(best);
        return o;
      }
    }
    uncover(best);
    return Outcome::kExhausted;
  }

  std::vector<std::size_t> left_, right_, up_, down_, col_, row_, size_;
  std::vector<std::size_t> chosen_;
  std::uint64_t nodes_ = 0;
  std::uint64_t limit_ = 0;
};

}  // namespace

SolveResult solve(const ExactCoverInstance& instance, std::uint64_t node_limit) {
  Dlx dlx(instance);
  SolveResult res = dlx.run(node_limit);
  if (res.witness && !verify(instance, *res.witness)) {
    throw std::logic_error("solver produced an invalid cover");
  }
  return res;
}

// ---------------------------------------------------------------------------
// Text formats

std::string format_cover(const ExactCoverInstance& instance) {
  std::ostringstream out;
  out << instance.universe_size() << ' ' << instance.set_count() << '\n';
  for (const auto& s : instance.sets()) {
    for (std::size_t k = 0; k < s.size(); ++k) out << (k ? " " : "") << s[k];
    out << '\n';
  }
  return out.str();
}

namespace detail {

ExactCoverInstance read_cover(TextReader& in) {
  auto header = split_ws(in.content_line("exact cover header"));
  if (header.size() != 2) in.fail("exact cover header must be 'U L'");
  auto universe = parse_size(header[0]);
  auto count = parse_size(header[1]);
  if (!universe || !count) in.fail("exact cover header must hold two decimal counts");

  std::vector<ElementSet> sets;
  sets.reserve(*count);
  for (std::size_t i = 0; i < *count; ++i) {
    ElementSet s;
    std::size_t prev = 0;
    for (auto tok : split_ws(in.content_line("exact cover set line"))) {
      auto e = parse_size(tok);
      if (!e) in.fail("bad element '" + std::string(tok) + "'");
      if (*e >= *universe) in.fail("element " + std::string(tok) + " outside universe");
      if (!s.empty() && *e <= prev) in.fail("set elements must be strictly increasing");
      prev = *e;
      s.push_back(*e);
    }
    sets.push_back(std::move(s));
  }
  return ExactCoverInstance(*universe, std::move(sets));
}

}  // namespace detail

ExactCoverInstance parse_cover(std::string_view text) {
  detail::TextReader in(text);
  ExactCoverInstance inst = detail::read_cover(in);
  while (!in.at_end()) {
    auto l = in.line("trailing data");
    if (!l.empty() && l.front() != '#' && !detail::split_ws(l).empty()) {
      in.fail("trailing data after exact cover sets");
    }
  }
  return inst;
}

std::string format_witness(const Witness& witness) {
  std::ostringstream out;
  const auto& idx = witness.indices();
  for (std::size_t k = 0; k < idx.size(); ++k) out << (k ? " " : "") << idx[k];
  out << '\n';
  return out.str();
}

Witness parse_witness(std::string_view text) {
  std::vector<std::size_t> idx;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool seen = false;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view l = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++line_no;
    const std::size_t line_start = pos;
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    if (!l.empty() && l.front() == '#') continue;
    auto toks = detail::split_ws(l);
    if (toks.empty()) continue;
    if (seen) throw FormatError("witness must be a single line of set indices", line_start);
    seen = true;
    for (auto t : toks) {
      auto v = detail::parse_size(t);
      if (!v) throw FormatError("bad witness index '" + std::string(t) + "'", line_start);
      idx.push_back(*v);
    }
  }
  return Witness(std::move(idx));
}

}  // namespace cltwe
