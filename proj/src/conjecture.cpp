#include "invlim/conjecture.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <iterator>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <utility>

#include "invlim/error.hpp"

namespace invlim {

FamilyDescriptor FamilyDescriptor::describe(const PartitionFamily& family) {
  if (family.is_full_lattice()) return {true, {}};
  const auto members = family.members();
  return {false, {members.begin(), members.end()}};
}

PartitionFamily FamilyDescriptor::rebuild(std::size_t n) const {
  if (full_lattice) return PartitionFamily::full_lattice(n);
  PartitionFamily family = PartitionFamily::of(members);
  if (family.ground_size() != n) {
    throw DimensionError("family on n=" + std::to_string(family.ground_size()) +
                         " but map on n=" + std::to_string(n));
  }
  return family;
}

Thread easy_direction_witness(const PartitionFamily& family, std::size_t x) {
  Thread thread;
  thread.choice.reserve(family.size());
  for (const SetPartition& p : family.members()) {
    thread.choice.push_back(p.block_of(x));
  }
  return thread;
}

PointVerdict check_point(const Endofunction& map, std::size_t x,
                         Semantics semantics, const PartitionFamily& family,
                         const CheckOptions& options) {
  const InverseSystemAtPoint system = build_system(map, x, family);

  PointVerdict verdict;
  verdict.map = map;
  verdict.x = x;
  verdict.semantics = semantics;
  verdict.family = FamilyDescriptor::describe(family);
  verdict.periodic = system.orbit.tail_length() == 0;

  if (options.top_fast_path && family.is_full_lattice() &&
      semantics == Semantics::standard) {
    std::vector<Thread> threads = limit_via_top(system, semantics);
    verdict.thread_count = threads.size();
    if (!threads.empty()) verdict.witness = std::move(threads.front());
  } else {
    ThreadList list = enumerate_threads(system, semantics, options.thread_cap);
    verdict.thread_count = list.threads.size();
    verdict.thread_count_truncated = list.truncated;
    if (!list.threads.empty()) verdict.witness = std::move(list.threads.front());
  }
  verdict.limit_nonempty = verdict.thread_count > 0;
  verdict.conjecture_holds = verdict.limit_nonempty == verdict.periodic;

  if (verdict.reverse_failure()) {
    throw ConsistencyError("periodic point " + std::to_string(x) +
                           " has an empty inverse limit");
  }
  if (verdict.witness) {
    const ThreadAudit audit = audit_thread(system, *verdict.witness, semantics);
    if (!audit.ok()) {
      throw ConsistencyError("witness thread failed audit: " +
                             audit.violations.front());
    }
  }
  return verdict;
}

bool check_easy_direction(const Endofunction& map, std::size_t x,
                          Semantics semantics, const PartitionFamily& family) {
  const InverseSystemAtPoint system = build_system(map, x, family);
  if (system.orbit.tail_length() != 0) {
    throw UsageError("point " + std::to_string(x) +
                     " is not periodic; the easy direction does not apply");
  }
  if (audit_thread(system, easy_direction_witness(family, x), semantics)
          .ok()) {
    return true;
  }
  return !enumerate_threads(system, semantics, 1).threads.empty();
}

namespace {

struct Tally {
  std::uint64_t points = 0;
  std::uint64_t holds = 0;
  std::uint64_t reverse = 0;
  std::uint64_t forward = 0;
  std::vector<PointVerdict> counterexamples;
  bool done = false;
};

constexpr std::uint64_t kChunk = 64;

// Checks items [0, count) in fixed-size chunks handed out to workers; chunk
// results are merged in index order, so the worker count never shows in
// the report.
void run_sweep(SweepReport& report, std::uint64_t count,
               const std::function<std::vector<Endofunction>(
                   std::uint64_t, std::uint64_t)>& items,
               const PartitionFamily& family, const SweepOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const std::uint64_t chunks = (count + kChunk - 1) / kChunk;
  std::vector<Tally> tallies(chunks);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    while (!options.stop.stop_requested() && !failed.load()) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        Tally& tally = tallies[c];
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(count, lo + kChunk);
        for (const Endofunction& map : items(lo, hi)) {
          for (std::size_t x = 0; x < map.size(); ++x) {
            PointVerdict v =
                check_point(map, x, report.semantics, family, options.check);
            ++tally.points;
            if (v.conjecture_holds) {
              ++tally.holds;
            } else {
              if (v.reverse_failure()) ++tally.reverse;
              if (v.forward_failure()) ++tally.forward;
              tally.counterexamples.push_back(std::move(v));
            }
          }
        }
        tally.done = true;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);

  for (Tally& tally : tallies) {
    if (!tally.done) {
      report.complete = false;
      continue;
    }
    report.total_points += tally.points;
    report.holds_count += tally.holds;
    report.reverse_failures += tally.reverse;
    report.forward_failures += tally.forward;
    std::move(tally.counterexamples.begin(), tally.counterexamples.end(),
              std::back_inserter(report.counterexamples));
  }
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
}

void require_sweep_ceiling(std::size_t n, const SweepOptions& options) {
  if (n == 0) throw EmptyGroundSetError();
  if (n > kSweepCeiling && !options.force) {
    throw ResourceGuardError("exhaustive sweep at n=" + std::to_string(n) +
                             " exceeds the ceiling n=" +
                             std::to_string(kSweepCeiling) +
                             " (override required)");
  }
}

void require_family_size(std::size_t n, const PartitionFamily& family) {
  if (family.ground_size() != n) {
    throw DimensionError("family on n=" + std::to_string(family.ground_size()) +
                         " but sweep on n=" + std::to_string(n));
  }
}

}  // namespace

SweepReport exhaustive_sweep(std::size_t n, Semantics semantics,
                             const PartitionFamily& family,
                             const SweepOptions& options) {
  require_sweep_ceiling(n, options);
  require_family_size(n, family);
  SweepReport report;
  report.n = n;
  report.semantics = semantics;
  report.mode = SweepMode::exhaustive;
  report.family = FamilyDescriptor::describe(family);
  run_sweep(
      report, endofunction_count(n),
      [n](std::uint64_t lo, std::uint64_t hi) {
        std::vector<Endofunction> out;
        EndofunctionStream stream(n, lo, hi);
        while (auto f = stream.next()) out.push_back(std::move(*f));
        return out;
      },
      family, options);
  return report;
}

SweepReport exhaustive_sweep(std::size_t n, Semantics semantics,
                             const SweepOptions& options) {
  require_sweep_ceiling(n, options);
  return exhaustive_sweep(n, semantics,
                          PartitionFamily::full_lattice(n, options.force),
                          options);
}

std::vector<Endofunction> sample_endofunctions(std::size_t n,
                                               std::uint64_t count,
                                               std::uint64_t seed) {
  if (n == 0) throw EmptyGroundSetError();
  std::mt19937_64 rng(seed);
  std::vector<Endofunction> out;
  out.reserve(count);
  std::vector<std::size_t> table(n);
  for (std::uint64_t i = 0; i < count; ++i) {
    for (std::size_t& entry : table) entry = static_cast<std::size_t>(rng() % n);
    out.emplace_back(table);
  }
  return out;
}

SweepReport sampled_sweep(std::size_t n, Semantics semantics,
                          const PartitionFamily& family,
                          std::uint64_t sample_size, std::uint64_t seed,
                          const SweepOptions& options) {
  if (n == 0) throw EmptyGroundSetError();
  require_family_size(n, family);
  SweepReport report;
  report.n = n;
  report.semantics = semantics;
  report.mode = SweepMode::sampled;
  report.family = FamilyDescriptor::describe(family);
  report.sample_size = sample_size;
  report.seed = seed;
  const std::vector<Endofunction> sample =
      sample_endofunctions(n, sample_size, seed);
  run_sweep(
      report, sample.size(),
      [&sample](std::uint64_t lo, std::uint64_t hi) {
        return std::vector<Endofunction>(
            sample.begin() + static_cast<std::ptrdiff_t>(lo),
            sample.begin() + static_cast<std::ptrdiff_t>(hi));
      },
      family, options);
  return report;
}

SweepReport sampled_sweep(std::size_t n, Semantics semantics,
                          std::uint64_t sample_size, std::uint64_t seed,
                          const SweepOptions& options) {
  if (n == 0) throw EmptyGroundSetError();
  return sampled_sweep(n, semantics,
                       PartitionFamily::full_lattice(n, options.force),
                       sample_size, seed, options);
}

PointVerdict replay(const PointVerdict& recorded, const CheckOptions& options) {
  const PartitionFamily family = recorded.family.rebuild(recorded.map.size());
  return check_point(recorded.map, recorded.x, recorded.semantics, family,
                     options);
}

}  // namespace invlim
