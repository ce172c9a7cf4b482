#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stop_token>
#include <vector>

#include "invlim/dynamics.hpp"
#include "invlim/inverse_system.hpp"
#include "invlim/partitions.hpp"

namespace invlim {

// Exhaustive sweeps above this n need `force` (7^7 * 7 points over an
// 877-member lattice is hours of work).
inline constexpr std::size_t kSweepCeiling = 6;

// Which partitions index the inverse limit. `members` is empty for the full
// lattice.
struct FamilyDescriptor {
  bool full_lattice = true;
  std::vector<SetPartition> members;

  static FamilyDescriptor describe(const PartitionFamily& family);
  PartitionFamily rebuild(std::size_t n) const;

  friend bool operator==(const FamilyDescriptor&,
                         const FamilyDescriptor&) = default;
};

// Outcome of testing
//   limit over the family of Delta(x) is nonempty  <=>  x is periodic
// at a single point.
struct PointVerdict {
  Endofunction map;
  std::size_t x = 0;
  Semantics semantics = Semantics::standard;
  FamilyDescriptor family;
  bool limit_nonempty = false;
  std::size_t thread_count = 0;
  bool thread_count_truncated = false;
  bool periodic = false;
  bool conjecture_holds = false;
  std::optional<Thread> witness;  // smallest thread, when nonempty

  // periodic and limit empty: the "easy" implication fails.
  bool reverse_failure() const noexcept { return periodic && !limit_nonempty; }
  // limit nonempty but not periodic: the open implication fails.
  bool forward_failure() const noexcept { return !periodic && limit_nonempty; }

  friend bool operator==(const PointVerdict&, const PointVerdict&) = default;
};

struct CheckOptions {
  std::size_t thread_cap = kDefaultThreadCap;
  // Count threads with limit_via_top instead of the search when the family
  // is the full lattice and the semantics is standard.
  bool top_fast_path = false;
};

// Throws ConsistencyError if a periodic point gets an empty limit or the
// witness fails its audit; both are implementation bugs.
PointVerdict check_point(const Endofunction& map, std::size_t x,
                         Semantics semantics, const PartitionFamily& family,
                         const CheckOptions& options = {});

// For periodic x, builds the candidate thread "block containing x" at every
// member and reports whether the limit is nonempty. Throws UsageError when
// x is not periodic.
bool check_easy_direction(const Endofunction& map, std::size_t x,
                          Semantics semantics, const PartitionFamily& family);
Thread easy_direction_witness(const PartitionFamily& family, std::size_t x);

enum class SweepMode { exhaustive, sampled };

struct SweepReport {
  std::size_t n = 0;
  Semantics semantics = Semantics::standard;
  SweepMode mode = SweepMode::exhaustive;
  FamilyDescriptor family;
  std::uint64_t sample_size = 0;  // sampled mode only
  std::uint64_t seed = 0;         // sampled mode only
  std::uint64_t total_points = 0;
  std::uint64_t holds_count = 0;
  std::uint64_t reverse_failures = 0;
  std::uint64_t forward_failures = 0;
  std::vector<PointVerdict> counterexamples;  // in (map, x) order
  bool complete = true;
  double wall_time_seconds = 0.0;
};

struct SweepOptions {
  std::size_t workers = 1;
  bool force = false;  // lift kSweepCeiling
  CheckOptions check;
  // A stop request ends the sweep early; the report then covers the work
  // finished so far and has complete = false.
  std::stop_token stop;
};

// Every (T, x) for T in the n^n endofunctions. Throws ResourceGuardError
// for n > kSweepCeiling without options.force.
SweepReport exhaustive_sweep(std::size_t n, Semantics semantics,
                             const PartitionFamily& family,
                             const SweepOptions& options = {});
SweepReport exhaustive_sweep(std::size_t n, Semantics semantics,
                             const SweepOptions& options = {});

// `sample_size` endofunctions drawn from a mt19937_64 seeded with `seed`
// (entry = draw mod n), every point of each checked.
SweepReport sampled_sweep(std::size_t n, Semantics semantics,
                          const PartitionFamily& family,
                          std::uint64_t sample_size, std::uint64_t seed,
                          const SweepOptions& options = {});
SweepReport sampled_sweep(std::size_t n, Semantics semantics,
                          std::uint64_t sample_size, std::uint64_t seed,
                          const SweepOptions& options = {});

std::vector<Endofunction> sample_endofunctions(std::size_t n,
                                               std::uint64_t count,
                                               std::uint64_t seed);

// Re-runs a recorded verdict through check_point.
PointVerdict replay(const PointVerdict& recorded,
                    const CheckOptions& options = {});

}  // namespace invlim
