#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cltwe {

using ElementSet = std::vector<std::size_t>;

// Universe {0..U-1} and an ordered family of subsets. Sets are stored sorted
// and duplicate-free; empty sets are dropped at construction (an empty set
// would encode the multiplicative identity) and their original positions are
// kept in dropped_empty().
class ExactCoverInstance {
 public:
  ExactCoverInstance() = default;
  // Throws ParameterError if an element is >= universe.
  ExactCoverInstance(std::size_t universe, std::vector<ElementSet> sets);

  std::size_t universe_size() const { return universe_; }
  std::size_t set_count() const { return sets_.size(); }
  const std::vector<ElementSet>& sets() const { return sets_; }
  const ElementSet& set(std::size_t i) const { return sets_.at(i); }
  const std::vector<std::size_t>& dropped_empty() const { return dropped_empty_; }

  bool operator==(const ExactCoverInstance& o) const {
    return universe_ == o.universe_ && sets_ == o.sets_;
  }

 private:
  std::size_t universe_ = 0;
  std::vector<ElementSet> sets_;
  std::vector<std::size_t> dropped_empty_;
};

// Sorted, duplicate-free selection of set indices.
class Witness {
 public:
  Witness() = default;
  // Sorts; throws WitnessError on a repeated index.
  explicit Witness(std::vector<std::size_t> indices);
  Witness(std::initializer_list<std::size_t> indices)
      : Witness(std::vector<std::size_t>(indices)) {}

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }

  bool operator==(const Witness&) const = default;

 private:
  std::vector<std::size_t> indices_;
};

// True iff the selected sets are pairwise disjoint and cover the universe.
// Throws WitnessError on an out-of-range index.
bool verify(const ExactCoverInstance& instance, const Witness& witness);

enum class SolveStatus { kFound, kNoSolution, kLimitExceeded };

struct SolveResult {
  SolveStatus status = SolveStatus::kNoSolution;
  std::optional<Witness> witness;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultNodeLimit = 10'000'000;

// Knuth's Algorithm X on dancing links. Branches on the column with fewest
// rows (lowest index on ties) and tries rows in increasing index order, so the
// first cover found is deterministic. `nodes` counts row selections.
SolveResult solve(const ExactCoverInstance& instance,
                  std::uint64_t node_limit = kDefaultNodeLimit);

// Text format: "U L", then L lines of sorted space-separated elements.
// Lines starting with '#' are comments.
std::string format_cover(const ExactCoverInstance& instance);
ExactCoverInstance parse_cover(std::string_view text);

// One line of space-separated set indices.
std::string format_witness(const Witness& witness);
Witness parse_witness(std::string_view text);

}  // namespace cltwe
