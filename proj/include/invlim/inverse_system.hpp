#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "invlim/dynamics.hpp"
#include "invlim/partitions.hpp"

namespace invlim {

// How the inverse limit is read.
//   standard         every compatible choice of blocks is a thread.
//   point_supported  a thread must additionally pick, at every partition,
//                    the block that contains the base point x.
enum class Semantics { standard, point_supported };

std::string_view to_string(Semantics semantics) noexcept;
// Accepts "standard" and "point-supported"; throws UsageError otherwise.
Semantics parse_semantics(std::string_view text);

// Number of partitions of an n-set.
std::uint64_t bell_number(std::size_t n);

// An ordered set of distinct partitions of one ground set, together with
// every comparable pair among them. Copies share the precomputed order data.
class PartitionFamily {
 public:
  // A comparable pair of members, by member index, with its coarsening
  // table.
  struct Relation {
    std::size_t fine;
    std::size_t coarse;
    std::vector<std::size_t> table;
  };

  // All of FP(X), lexicographic. Throws ResourceGuardError for
  // n > kLatticeCeiling unless `allow_large`.
  static PartitionFamily full_lattice(std::size_t n, bool allow_large = false);

  // Members must be nonempty, distinct and share one ground set. The
  // full-lattice flag is set when they exhaust FP(X).
  static PartitionFamily of(std::vector<SetPartition> members);

  std::size_t ground_size() const noexcept;
  std::span<const SetPartition> members() const noexcept;
  std::size_t size() const noexcept { return members().size(); }
  bool is_full_lattice() const noexcept;
  std::span<const Relation> relations() const noexcept;
  std::optional<std::size_t> index_of(const SetPartition& p) const;

 private:
  struct Data;
  explicit PartitionFamily(std::shared_ptr<const Data> data)
      : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

inline constexpr std::size_t kNoImage = std::numeric_limits<std::size_t>::max();

// Restriction of a coarsening map to Delta'(x) -> Delta(x). image[a'] is
// kNoImage for fine blocks outside Delta'(x).
struct RestrictedEdge {
  std::size_t fine;
  std::size_t coarse;
  std::vector<std::size_t> image;
};

// The inverse family (Delta(x), psi restricted) at one point.
struct InverseSystemAtPoint {
  Endofunction map;
  std::size_t x;
  PartitionFamily family;
  OrbitShape orbit;
  std::vector<DeltaSet> nodes;        // parallel to family.members()
  std::vector<RestrictedEdge> edges;  // parallel to family.relations()
};

// Throws DimensionError/PointError on bad input, ConsistencyError if an
// edge leaves its target node (impossible unless delta_of is broken).
InverseSystemAtPoint build_system(const Endofunction& map, std::size_t x,
                                  const PartitionFamily& family);

// choice[i] is the block picked at family member i.
struct Thread {
  std::vector<std::size_t> choice;

  friend bool operator==(const Thread&, const Thread&) = default;
  friend auto operator<=>(const Thread&, const Thread&) = default;
};

struct ThreadList {
  std::vector<Thread> threads;  // ascending
  bool truncated = false;
};

inline constexpr std::size_t kDefaultThreadCap = 100000;

// All threads of the system under `semantics`, lexicographically ordered.
// Search stops after `cap` threads and sets `truncated`.
ThreadList enumerate_threads(const InverseSystemAtPoint& system,
                             Semantics semantics,
                             std::size_t cap = kDefaultThreadCap);

// Fast path for families containing the singleton partition, which then
// sits above every member: a thread is fixed by its block there, so there
// is one thread per admissible cycle point. Throws UsageError when the
// family has no singleton partition.
std::vector<Thread> limit_via_top(const InverseSystemAtPoint& system,
                                  Semantics semantics);
std::vector<Thread> limit_via_top(const Endofunction& map, std::size_t x,
                                  Semantics semantics = Semantics::standard);

// Independent post-hoc check of a thread, by element-set containment
// against the raw partitions rather than the edge tables.
struct ThreadAudit {
  std::size_t membership_checks = 0;
  std::size_t compatibility_checks = 0;
  std::size_t support_checks = 0;
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
};

ThreadAudit audit_thread(const InverseSystemAtPoint& system,
                         const Thread& thread, Semantics semantics);

}  // namespace invlim
