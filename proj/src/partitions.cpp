#include "invlim/partitions.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "invlim/error.hpp"

namespace invlim {

namespace {

void require_same_size(const SetPartition& a, const SetPartition& b) {
  if (a.size() != b.size()) {
    throw DimensionError("partitions of different ground sets: n=" +
                         std::to_string(a.size()) + " vs n=" +
                         std::to_string(b.size()));
  }
}

}  // namespace

bool is_restricted_growth(std::span<const std::size_t> rgs) noexcept {
  if (rgs.empty() || rgs[0] != 0) return false;
  std::size_t next_fresh = 1;
  for (std::size_t i = 1; i < rgs.size(); ++i) {
    if (rgs[i] > next_fresh) return false;
    if (rgs[i] == next_fresh) ++next_fresh;
  }
  return true;
}

SetPartition SetPartition::from_rgs(std::vector<std::size_t> rgs) {
  if (rgs.empty()) throw EmptyGroundSetError();
  if (!is_restricted_growth(rgs)) {
    throw ValidationError("not a restricted-growth string");
  }
  const std::size_t blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
  return SetPartition(std::move(rgs), blocks);
}

SetPartition SetPartition::from_blocks(std::size_t n,
                                       std::span<const Block> blocks) {
  if (n == 0) throw EmptyGroundSetError();
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(n, kUnassigned);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) {
      throw ValidationError("block " + std::to_string(b) + " is empty");
    }
    for (std::size_t e : blocks[b]) {
      if (e >= n) {
        throw ValidationError("element " + std::to_string(e) +
                              " is outside the ground set of size " +
                              std::to_string(n));
      }
      if (owner[e] != kUnassigned) {
        throw ValidationError("element " + std::to_string(e) +
                              " appears in blocks " +
                              std::to_string(owner[e]) + " and " +
                              std::to_string(b));
      }
      owner[e] = b;
    }
  }
  // Relabel in first-use order.
  std::vector<std::size_t> relabel(blocks.size(), kUnassigned);
  std::vector<std::size_t> rgs(n);
  std::size_t fresh = 0;
  for (std::size_t e = 0; e < n; ++e) {
    if (owner[e] == kUnassigned) {
      throw ValidationError("element " + std::to_string(e) +
                            " is not covered by any block");
    }
    std::size_t& label = relabel[owner[e]];
    if (label == kUnassigned) label = fresh++;
    rgs[e] = label;
  }
  return SetPartition(std::move(rgs), fresh);
}

SetPartition SetPartition::one_block(std::size_t n) {
  if (n == 0) throw EmptyGroundSetError();
  return SetPartition(std::vector<std::size_t>(n, 0), 1);
}

SetPartition SetPartition::singletons(std::size_t n) {
  if (n == 0) throw EmptyGroundSetError();
  std::vector<std::size_t> rgs(n);
  for (std::size_t i = 0; i < n; ++i) rgs[i] = i;
  return SetPartition(std::move(rgs), n);
}

Block SetPartition::block(std::size_t index) const {
  if (index >= block_count_) {
    throw ValidationError("block index " + std::to_string(index) +
                          " out of range");
  }
  Block out;
  for (std::size_t e = 0; e < rgs_.size(); ++e) {
    if (rgs_[e] == index) out.push_back(e);
  }
  return out;
}

std::vector<Block> SetPartition::blocks() const {
  std::vector<Block> out(block_count_);
  for (std::size_t e = 0; e < rgs_.size(); ++e) out[rgs_[e]].push_back(e);
  return out;
}

PartitionStream::PartitionStream(std::size_t n)
    : rgs_(n, 0), prefix_max_(n, 0) {
  if (n == 0) throw EmptyGroundSetError();
}

std::optional<SetPartition> PartitionStream::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return SetPartition::from_rgs(rgs_);
  }
  // Rightmost position that can still grow; it may exceed the prefix max
  // by at most one.
  const std::size_t n = rgs_.size();
  std::size_t i = n;
  while (i > 1) {
    --i;
    if (rgs_[i] <= prefix_max_[i]) {
      ++rgs_[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        rgs_[j] = 0;
        prefix_max_[j] = std::max(prefix_max_[j - 1], rgs_[j - 1]);
      }
      return SetPartition::from_rgs(rgs_);
    }
  }
  done_ = true;
  return std::nullopt;
}

std::vector<SetPartition> enumerate_partitions(std::size_t n) {
  PartitionStream stream(n);
  std::vector<SetPartition> out;
  while (auto p = stream.next()) out.push_back(std::move(*p));
  return out;
}

bool refines(const SetPartition& fine, const SetPartition& coarse) {
  require_same_size(fine, coarse);
  // fine-equal must imply coarse-equal; since fine's labels are dense, one
  // image slot per fine block suffices.
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> image(fine.block_count(), kUnset);
  const auto f = fine.rgs();
  const auto c = coarse.rgs();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (image[f[i]] == kUnset) {
      image[f[i]] = c[i];
    } else if (image[f[i]] != c[i]) {
      return false;
    }
  }
  return true;
}

CoarseningMap coarsening_map(const SetPartition& fine,
                             const SetPartition& coarse) {
  if (!refines(fine, coarse)) {
    throw OrderError("coarsening map undefined: partition does not refine "
                     "the target");
  }
  std::vector<std::size_t> table(fine.block_count());
  const auto f = fine.rgs();
  const auto c = coarse.rgs();
  for (std::size_t i = 0; i < f.size(); ++i) table[f[i]] = c[i];
  return CoarseningMap{fine, coarse, std::move(table)};
}

SetPartition common_refinement(const SetPartition& p, const SetPartition& q) {
  require_same_size(p, q);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> labels;
  std::vector<std::size_t> rgs(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto [it, inserted] =
        labels.try_emplace({p.block_of(i), q.block_of(i)}, labels.size());
    rgs[i] = it->second;
  }
  return SetPartition::from_rgs(std::move(rgs));
}

}  // namespace invlim

std::size_t std::hash<invlim::SetPartition>::operator()(
    const invlim::SetPartition& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (std::size_t v : p.rgs()) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}
