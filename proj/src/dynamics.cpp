#include "invlim/dynamics.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "invlim/error.hpp"

namespace invlim {

namespace {

void require_point(std::size_t n, std::size_t x) {
  if (x >= n) {
    throw PointError("point " + std::to_string(x) +
                     " is outside the ground set of size " + std::to_string(n));
  }
}

}  // namespace

Endofunction::Endofunction(std::vector<std::size_t> table)
    : table_(std::move(table)) {
  if (table_.empty()) throw EmptyGroundSetError();
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] >= table_.size()) {
      throw PointError("image T(" + std::to_string(i) + ") = " +
                       std::to_string(table_[i]) +
                       " is outside the ground set of size " +
                       std::to_string(table_.size()));
    }
  }
}

Endofunction Endofunction::identity(std::size_t n) {
  std::vector<std::size_t> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = i;
  return Endofunction(std::move(t));
}

Endofunction Endofunction::constant(std::size_t n, std::size_t value) {
  return Endofunction(std::vector<std::size_t>(n, value));
}

bool OrbitShape::on_cycle(std::size_t y) const {
  return std::find(cycle.begin(), cycle.end(), y) != cycle.end();
}

bool DeltaSet::contains(std::size_t block) const {
  return std::binary_search(blocks.begin(), blocks.end(), block);
}

OrbitShape orbit_shape(const Endofunction& map, std::size_t x) {
  const std::size_t n = map.size();
  require_point(n, x);
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> position(n, kUnseen);
  std::vector<std::size_t> path;
  std::size_t y = x;
  while (position[y] == kUnseen) {
    position[y] = path.size();
    path.push_back(y);
    y = map(y);
  }
  const auto split = path.begin() + static_cast<std::ptrdiff_t>(position[y]);
  OrbitShape shape;
  shape.x = x;
  shape.tail.assign(path.begin(), split);
  shape.cycle.assign(split, path.end());
  return shape;
}

bool visits_infinitely(const Endofunction& map, std::size_t x,
                       std::span<const std::size_t> block) {
  for (std::size_t e : block) require_point(map.size(), e);
  const OrbitShape shape = orbit_shape(map, x);
  return std::any_of(block.begin(), block.end(),
                     [&](std::size_t e) { return shape.on_cycle(e); });
}

DeltaSet delta_of(const OrbitShape& orbit, const SetPartition& partition) {
  std::vector<char> hit(partition.block_count(), 0);
  for (std::size_t y : orbit.cycle) {
    if (y >= partition.size()) {
      throw DimensionError("orbit point " + std::to_string(y) +
                           " outside partition of size " +
                           std::to_string(partition.size()));
    }
    hit[partition.block_of(y)] = 1;
  }
  DeltaSet out{partition, {}};
  for (std::size_t b = 0; b < hit.size(); ++b) {
    if (hit[b]) out.blocks.push_back(b);
  }
  if (out.blocks.empty()) {
    throw ConsistencyError("Delta(x) came out empty");
  }
  return out;
}

DeltaSet delta_of(const Endofunction& map, std::size_t x,
                  const SetPartition& partition) {
  if (partition.size() != map.size()) {
    throw DimensionError("map on n=" + std::to_string(map.size()) +
                         " but partition on n=" +
                         std::to_string(partition.size()));
  }
  return delta_of(orbit_shape(map, x), partition);
}

bool is_periodic(const Endofunction& map, std::size_t x) {
  return orbit_shape(map, x).tail_length() == 0;
}

std::uint64_t endofunction_count(std::size_t n) {
  if (n == 0) throw EmptyGroundSetError();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / n) {
      throw ResourceGuardError("n^n overflows 64 bits for n=" +
                               std::to_string(n));
    }
    total *= n;
  }
  return total;
}

Endofunction endofunction_at(std::size_t n, std::uint64_t rank) {
  if (rank >= endofunction_count(n)) {
    throw UsageError("endofunction rank out of range");
  }
  std::vector<std::size_t> table(n);
  for (std::size_t i = n; i-- > 0;) {
    table[i] = static_cast<std::size_t>(rank % n);
    rank /= n;
  }
  return Endofunction(std::move(table));
}

EndofunctionStream::EndofunctionStream(std::size_t n)
    : EndofunctionStream(n, 0, endofunction_count(n)) {}

EndofunctionStream::EndofunctionStream(std::size_t n, std::uint64_t first,
                                       std::uint64_t last)
    : position_(first), last_(std::min(last, endofunction_count(n))) {
  if (position_ < last_) {
    const Endofunction start = endofunction_at(n, position_);
    table_.assign(start.table().begin(), start.table().end());
  }
}

std::optional<Endofunction> EndofunctionStream::next() {
  if (position_ >= last_) return std::nullopt;
  Endofunction current(table_);
  ++position_;
  // Odometer increment, last entry least significant.
  const std::size_t n = table_.size();
  for (std::size_t i = n; i-- > 0;) {
    if (++table_[i] < n) break;
    table_[i] = 0;
  }
  return current;
}

std::vector<Endofunction> enumerate_endofunctions(std::size_t n) {
  EndofunctionStream stream(n);
  std::vector<Endofunction> out;
  while (auto f = stream.next()) out.push_back(std::move(*f));
  return out;
}

}  // namespace invlim
