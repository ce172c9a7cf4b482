#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "invlim/partitions.hpp"

namespace invlim {

// A map T : {0, ..., n-1} -> {0, ..., n-1} stored as its image table.
class Endofunction {
 public:
  // Throws EmptyGroundSetError for an empty table, PointError for an entry
  // outside the ground set.
  explicit Endofunction(std::vector<std::size_t> table);
  // The identity on {0}.
  Endofunction() : table_{0} {}

  static Endofunction identity(std::size_t n);
  static Endofunction constant(std::size_t n, std::size_t value);

  std::size_t size() const noexcept { return table_.size(); }
  std::span<const std::size_t> table() const noexcept { return table_; }
  std::size_t operator()(std::size_t x) const { return table_.at(x); }

  friend bool operator==(const Endofunction&, const Endofunction&) = default;
  friend auto operator<=>(const Endofunction&, const Endofunction&) = default;

 private:
  std::vector<std::size_t> table_;
};

// Rho-shaped forward orbit x, T(x), T^2(x), ...: a pre-periodic tail
// followed by the eventual cycle C(x).
struct OrbitShape {
  std::size_t x = 0;
  std::vector<std::size_t> tail;
  std::vector<std::size_t> cycle;

  std::size_t tail_length() const noexcept { return tail.size(); }
  std::size_t cycle_length() const noexcept { return cycle.size(); }
  bool on_cycle(std::size_t y) const;
};

// Delta(x): indices of the blocks of `partition` entered infinitely often by
// T^k(x), k >= 1. Sorted ascending and never empty.
struct DeltaSet {
  SetPartition partition;
  std::vector<std::size_t> blocks;

  bool contains(std::size_t block) const;
};

OrbitShape orbit_shape(const Endofunction& map, std::size_t x);

// On a finite set "infinitely often" is "meets the eventual cycle".
bool visits_infinitely(const Endofunction& map, std::size_t x,
                       std::span<const std::size_t> block);

DeltaSet delta_of(const Endofunction& map, std::size_t x,
                  const SetPartition& partition);

// Same as delta_of for a precomputed orbit; avoids re-walking the orbit
// once per partition.
DeltaSet delta_of(const OrbitShape& orbit, const SetPartition& partition);

// T^k(x) = x for some k >= 1.
bool is_periodic(const Endofunction& map, std::size_t x);

// Lexicographic stream over all n^n tables. A stream can be restricted to
// the half-open rank range [first, last) of the full order, which is how
// sweeps shard work.
class EndofunctionStream {
 public:
  explicit EndofunctionStream(std::size_t n);
  EndofunctionStream(std::size_t n, std::uint64_t first, std::uint64_t last);

  std::optional<Endofunction> next();

 private:
  std::vector<std::size_t> table_;
  std::uint64_t position_;
  std::uint64_t last_;
};

// n^n; throws ResourceGuardError when it does not fit in 64 bits.
std::uint64_t endofunction_count(std::size_t n);

// The table at `rank` in lexicographic order (entry 0 most significant).
Endofunction endofunction_at(std::size_t n, std::uint64_t rank);

std::vector<Endofunction> enumerate_endofunctions(std::size_t n);

}  // namespace invlim
