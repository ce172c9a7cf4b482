#include "invlim/inverse_system.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>

#include "invlim/error.hpp"

namespace invlim {

std::string_view to_string(Semantics semantics) noexcept {
  switch (semantics) {
    case Semantics::standard:
      return "standard";
    case Semantics::point_supported:
      return "point-supported";
  }
  return "unknown";
}

Semantics parse_semantics(std::string_view text) {
  if (text == "standard") return Semantics::standard;
  if (text == "point-supported") return Semantics::point_supported;
  throw UsageError("unknown semantics '" + std::string(text) +
                   "' (expected standard or point-supported)");
}

std::uint64_t bell_number(std::size_t n) {
  // Stirling numbers of the second kind, one row at a time.
  std::vector<std::uint64_t> row{1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<std::uint64_t> next(m + 1, 0);
    for (std::size_t k = 1; k <= m; ++k) {
      const std::uint64_t stay = k < row.size() ? k * row[k] : 0;
      next[k] = stay + row[k - 1];
    }
    row = std::move(next);
  }
  return std::accumulate(row.begin(), row.end(), std::uint64_t{0});
}

struct PartitionFamily::Data {
  std::size_t n = 0;
  std::vector<SetPartition> members;
  bool full_lattice = false;
  std::vector<Relation> relations;
  std::unordered_map<SetPartition, std::size_t> index;
};

namespace {

void fill_relations(std::vector<PartitionFamily::Relation>& out,
                    std::span<const SetPartition> members) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (i == j || !refines(members[i], members[j])) continue;
      out.push_back({i, j, coarsening_map(members[i], members[j]).table});
    }
  }
}

}  // namespace

PartitionFamily PartitionFamily::full_lattice(std::size_t n, bool allow_large) {
  if (n > kLatticeCeiling && !allow_large) {
    throw ResourceGuardError("full partition lattice for n=" +
                             std::to_string(n) + " exceeds the ceiling n=" +
                             std::to_string(kLatticeCeiling) +
                             " (override required)");
  }
  auto data = std::make_shared<Data>();
  data->n = n;
  data->members = enumerate_partitions(n);
  data->full_lattice = true;
  for (std::size_t i = 0; i < data->members.size(); ++i) {
    data->index.emplace(data->members[i], i);
  }
  fill_relations(data->relations, data->members);
  return PartitionFamily(std::move(data));
}

PartitionFamily PartitionFamily::of(std::vector<SetPartition> members) {
  if (members.empty()) throw UsageError("partition family is empty");
  auto data = std::make_shared<Data>();
  data->n = members.front().size();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].size() != data->n) {
      throw DimensionError("family member " + std::to_string(i) +
                           " has n=" + std::to_string(members[i].size()) +
                           ", expected n=" + std::to_string(data->n));
    }
    if (!data->index.emplace(members[i], i).second) {
      throw ValidationError("family member " + std::to_string(i) +
                            " duplicates an earlier member");
    }
  }
  data->members = std::move(members);
  data->full_lattice = data->n <= kLatticeCeiling &&
                       data->members.size() == bell_number(data->n);
  fill_relations(data->relations, data->members);
  return PartitionFamily(std::move(data));
}

std::size_t PartitionFamily::ground_size() const noexcept { return data_->n; }

std::span<const SetPartition> PartitionFamily::members() const noexcept {
  return data_->members;
}

bool PartitionFamily::is_full_lattice() const noexcept {
  return data_->full_lattice;
}

std::span<const PartitionFamily::Relation> PartitionFamily::relations()
    const noexcept {
  return data_->relations;
}

std::optional<std::size_t> PartitionFamily::index_of(
    const SetPartition& p) const {
  auto it = data_->index.find(p);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

InverseSystemAtPoint build_system(const Endofunction& map, std::size_t x,
                                  const PartitionFamily& family) {
  if (family.ground_size() != map.size()) {
    throw DimensionError("map on n=" + std::to_string(map.size()) +
                         " but family on n=" +
                         std::to_string(family.ground_size()));
  }
  InverseSystemAtPoint system{map, x, family, orbit_shape(map, x), {}, {}};
  system.nodes.reserve(family.size());
  for (const SetPartition& p : family.members()) {
    system.nodes.push_back(delta_of(system.orbit, p));
  }
  system.edges.reserve(family.relations().size());
  for (const auto& rel : family.relations()) {
    RestrictedEdge edge{rel.fine, rel.coarse,
                        std::vector<std::size_t>(rel.table.size(), kNoImage)};
    for (std::size_t a : system.nodes[rel.fine].blocks) {
      const std::size_t image = rel.table[a];
      if (!system.nodes[rel.coarse].contains(image)) {
        throw ConsistencyError(
            "coarsening image of a recurrent block is not recurrent "
            "(members " + std::to_string(rel.fine) + " -> " +
            std::to_string(rel.coarse) + ")");
      }
      edge.image[a] = image;
    }
    system.edges.push_back(std::move(edge));
  }
  return system;
}

namespace {

using Domains = std::vector<std::vector<char>>;

// Backtracking over members ordered coarse to fine, maintaining arc
// consistency on the edge constraints after every assignment.
class ThreadSearch {
 public:
  ThreadSearch(const InverseSystemAtPoint& system, Semantics semantics,
               std::size_t cap)
      : system_(system), cap_(cap), incident_(system.nodes.size()) {
    const std::size_t m = system.nodes.size();
    for (std::size_t e = 0; e < system.edges.size(); ++e) {
      incident_[system.edges[e].fine].push_back(e);
      incident_[system.edges[e].coarse].push_back(e);
    }
    order_.resize(m);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) {
                       return system.nodes[a].partition.block_count() <
                              system.nodes[b].partition.block_count();
                     });
    initial_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const DeltaSet& node = system.nodes[i];
      initial_[i].assign(node.partition.block_count(), 0);
      for (std::size_t b : node.blocks) initial_[i][b] = 1;
      if (semantics == Semantics::point_supported) {
        const std::size_t own = node.partition.block_of(system.x);
        for (std::size_t b = 0; b < initial_[i].size(); ++b) {
          if (b != own) initial_[i][b] = 0;
        }
      }
    }
  }

  ThreadList run() {
    ThreadList out;
    Domains domains = initial_;
    std::vector<std::size_t> all(system_.edges.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (propagate(domains, all)) descend(domains, 0, out);
    std::sort(out.threads.begin(), out.threads.end());
    return out;
  }

 private:
  // Prune `domains` to arc consistency starting from the queued edges.
  // Returns false on a wiped-out domain.
  bool propagate(Domains& domains, const std::vector<std::size_t>& seed) const {
    std::deque<std::size_t> queue(seed.begin(), seed.end());
    std::vector<char> queued(system_.edges.size(), 0);
    for (std::size_t e : seed) queued[e] = 1;
    while (!queue.empty()) {
      const std::size_t e = queue.front();
      queue.pop_front();
      queued[e] = 0;
      const RestrictedEdge& edge = system_.edges[e];
      auto& fine = domains[edge.fine];
      auto& coarse = domains[edge.coarse];
      bool fine_changed = false;
      bool coarse_changed = false;
      std::vector<char> supported(coarse.size(), 0);
      for (std::size_t a = 0; a < fine.size(); ++a) {
        if (!fine[a]) continue;
        const std::size_t image = edge.image[a];
        if (image == kNoImage || !coarse[image]) {
          fine[a] = 0;
          fine_changed = true;
        } else {
          supported[image] = 1;
        }
      }
      for (std::size_t a = 0; a < coarse.size(); ++a) {
        if (coarse[a] && !supported[a]) {
          coarse[a] = 0;
          coarse_changed = true;
        }
      }
      if (std::none_of(fine.begin(), fine.end(), [](char c) { return c; }) ||
          std::none_of(coarse.begin(), coarse.end(),
                       [](char c) { return c; })) {
        return false;
      }
      auto requeue = [&](std::size_t member) {
        for (std::size_t other : incident_[member]) {
          if (other != e && !queued[other]) {
            queued[other] = 1;
            queue.push_back(other);
          }
        }
      };
      if (fine_changed) requeue(edge.fine);
      if (coarse_changed) requeue(edge.coarse);
    }
    return true;
  }

  // Returns false once the cap is hit.
  bool descend(const Domains& domains, std::size_t depth, ThreadList& out) {
    if (depth == order_.size()) {
      if (out.threads.size() >= cap_) {
        out.truncated = true;
        return false;
      }
      Thread thread;
      thread.choice.resize(domains.size());
      for (std::size_t i = 0; i < domains.size(); ++i) {
        thread.choice[i] = static_cast<std::size_t>(
            std::find(domains[i].begin(), domains[i].end(), 1) -
            domains[i].begin());
      }
      out.threads.push_back(std::move(thread));
      return true;
    }
    const std::size_t member = order_[depth];
    const auto& domain = domains[member];
    for (std::size_t a = 0; a < domain.size(); ++a) {
      if (!domain[a]) continue;
      Domains next = domains;
      std::fill(next[member].begin(), next[member].end(), 0);
      next[member][a] = 1;
      if (!propagate(next, incident_[member])) continue;
      if (!descend(next, depth + 1, out)) return false;
    }
    return true;
  }

  const InverseSystemAtPoint& system_;
  std::size_t cap_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::size_t> order_;
  Domains initial_;
};

}  // namespace

ThreadList enumerate_threads(const InverseSystemAtPoint& system,
                             Semantics semantics, std::size_t cap) {
  return ThreadSearch(system, semantics, cap).run();
}

std::vector<Thread> limit_via_top(const InverseSystemAtPoint& system,
                                  Semantics semantics) {
  const auto top = system.family.index_of(
      SetPartition::singletons(system.family.ground_size()));
  if (!top) {
    throw UsageError("limit_via_top needs the singleton partition in the "
                     "family");
  }
  std::vector<Thread> out;
  for (std::size_t y : system.orbit.cycle) {
    if (semantics == Semantics::point_supported && y != system.x) continue;
    Thread thread;
    thread.choice.reserve(system.family.size());
    for (const SetPartition& p : system.family.members()) {
      thread.choice.push_back(p.block_of(y));
    }
    out.push_back(std::move(thread));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Thread> limit_via_top(const Endofunction& map, std::size_t x,
                                  Semantics semantics) {
  return limit_via_top(
      build_system(map, x, PartitionFamily::full_lattice(map.size())),
      semantics);
}

ThreadAudit audit_thread(const InverseSystemAtPoint& system,
                         const Thread& thread, Semantics semantics) {
  ThreadAudit audit;
  const auto members = system.family.members();
  if (thread.choice.size() != members.size()) {
    audit.violations.push_back("thread has " +
                               std::to_string(thread.choice.size()) +
                               " entries for a family of " +
                               std::to_string(members.size()));
    return audit;
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::size_t chosen = thread.choice[i];
    if (chosen >= members[i].block_count()) {
      audit.violations.push_back("member " + std::to_string(i) +
                                 ": block index out of range");
      return audit;
    }
    ++audit.membership_checks;
    if (!visits_infinitely(system.map, system.x, members[i].block(chosen))) {
      audit.violations.push_back("member " + std::to_string(i) +
                                 ": chosen block is not visited infinitely "
                                 "often");
    }
    if (semantics == Semantics::point_supported) {
      ++audit.support_checks;
      if (members[i].block_of(system.x) != chosen) {
        audit.violations.push_back("member " + std::to_string(i) +
                                   ": chosen block does not contain x");
      }
    }
  }
  for (const auto& rel : system.family.relations()) {
    ++audit.compatibility_checks;
    const SetPartition& fine = members[rel.fine];
    const SetPartition& coarse = members[rel.coarse];
    for (std::size_t e = 0; e < fine.size(); ++e) {
      if (fine.block_of(e) == thread.choice[rel.fine] &&
          coarse.block_of(e) != thread.choice[rel.coarse]) {
        audit.violations.push_back(
            "members " + std::to_string(rel.fine) + " -> " +
            std::to_string(rel.coarse) + ": element " + std::to_string(e) +
            " of the fine choice lies outside the coarse choice");
        break;
      }
    }
  }
  return audit;
}

}  // namespace invlim
