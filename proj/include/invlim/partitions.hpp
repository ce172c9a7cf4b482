#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace invlim {

// Full-lattice work beyond this ground-set size needs an explicit override:
// B(12) = 4,213,597 partitions.
inline constexpr std::size_t kLatticeCeiling = 12;

using Block = std::vector<std::size_t>;

// A partition of {0, ..., n-1} held as a restricted-growth string: rgs[i] is
// the block of element i, and blocks are numbered in order of first use.
// The representation is canonical, so equality is equality of rgs.
class SetPartition {
 public:
  // Throws ValidationError unless `rgs` is a nonempty restricted-growth
  // string.
  static SetPartition from_rgs(std::vector<std::size_t> rgs);

  // Canonicalizes an arbitrary block family. Blocks must be nonempty,
  // pairwise disjoint and cover {0, ..., n-1}; the error names the first
  // offending element or block.
  static SetPartition from_blocks(std::size_t n, std::span<const Block> blocks);

  static SetPartition one_block(std::size_t n);
  static SetPartition singletons(std::size_t n);

  std::size_t size() const noexcept { return rgs_.size(); }
  std::size_t block_count() const noexcept { return block_count_; }
  std::span<const std::size_t> rgs() const noexcept { return rgs_; }
  std::size_t block_of(std::size_t element) const { return rgs_.at(element); }

  // Elements of one block, ascending.
  Block block(std::size_t index) const;
  // All blocks, indexed by block number.
  std::vector<Block> blocks() const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;
  friend std::strong_ordering operator<=>(const SetPartition& a,
                                          const SetPartition& b) {
    return a.rgs_ <=> b.rgs_;
  }

 private:
  SetPartition(std::vector<std::size_t> rgs, std::size_t block_count)
      : rgs_(std::move(rgs)), block_count_(block_count) {}

  std::vector<std::size_t> rgs_;
  std::size_t block_count_;
};

bool is_restricted_growth(std::span<const std::size_t> rgs) noexcept;

// psi: sends each block of `fine` to the block of `coarse` containing it.
struct CoarseningMap {
  SetPartition fine;
  SetPartition coarse;
  std::vector<std::size_t> table;

  std::size_t operator()(std::size_t fine_block) const {
    return table.at(fine_block);
  }
};

// Lexicographic stream over all partitions of {0, ..., n-1}.
class PartitionStream {
 public:
  explicit PartitionStream(std::size_t n);

  std::optional<SetPartition> next();

 private:
  std::vector<std::size_t> rgs_;
  // prefix_max_[i] = max(rgs_[0..i-1]); prefix_max_[0] is unused.
  std::vector<std::size_t> prefix_max_;
  bool started_ = false;
  bool done_ = false;
};

// Every partition of {0, ..., n-1}, lexicographic in rgs. Throws
// EmptyGroundSetError for n = 0.
std::vector<SetPartition> enumerate_partitions(std::size_t n);

// True iff every block of `fine` lies inside a block of `coarse`. Written
// Delta <= Delta' with Delta = coarse and Delta' = fine in the refinement
// order, so the one-block partition is the minimum.
bool refines(const SetPartition& fine, const SetPartition& coarse);

// Throws OrderError unless refines(fine, coarse).
CoarseningMap coarsening_map(const SetPartition& fine,
                             const SetPartition& coarse);

// Coarsest partition refining both: i and j share a block iff they do in p
// and in q.
SetPartition common_refinement(const SetPartition& p, const SetPartition& q);

}  // namespace invlim

template <>
struct std::hash<invlim::SetPartition> {
  std::size_t operator()(const invlim::SetPartition& p) const noexcept;
};
