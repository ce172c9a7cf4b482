#include <stop_token>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "invlim/conjecture.hpp"
#include "invlim/error.hpp"
#include "oracles.hpp"

using namespace invlim;

namespace {

const Endofunction kRho{std::vector<std::size_t>{1, 2, 1}};

std::uint64_t off_cycle_points(const std::vector<Endofunction>& maps) {
  std::uint64_t count = 0;
  for (const auto& f : maps) {
    for (std::size_t x = 0; x < f.size(); ++x) {
      if (oracle::floyd(f, x).tail > 0) ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("check_point on the identity and constant maps") {
  const auto family = PartitionFamily::full_lattice(3);
  for (Semantics sem : {Semantics::standard, Semantics::point_supported}) {
    for (std::size_t x = 0; x < 3; ++x) {
      const auto v = check_point(Endofunction::identity(3), x, sem, family);
      CHECK(v.limit_nonempty);
      CHECK(v.periodic);
      CHECK(v.conjecture_holds);
      CHECK(v.thread_count == 1);
      REQUIRE(v.witness);
      CHECK(*v.witness == easy_direction_witness(family, x));
    }
    const auto fixed = check_point(Endofunction::constant(3, 1), 1, sem, family);
    CHECK(fixed.limit_nonempty);
    CHECK(fixed.periodic);
    CHECK(fixed.conjecture_holds);
  }
  const auto off = check_point(Endofunction::constant(3, 1), 0,
                               Semantics::point_supported, family);
  CHECK_FALSE(off.limit_nonempty);
  CHECK_FALSE(off.periodic);
  CHECK(off.conjecture_holds);
  CHECK_FALSE(off.witness);

  const auto standard_off = check_point(Endofunction::constant(3, 1), 0,
                                        Semantics::standard, family);
  CHECK(standard_off.limit_nonempty);
  CHECK_FALSE(standard_off.conjecture_holds);
  CHECK(standard_off.forward_failure());
  CHECK_FALSE(standard_off.reverse_failure());
  CHECK(standard_off.family.full_lattice);
}

TEST_CASE("check_point fast path matches the search") {
  const auto family = PartitionFamily::full_lattice(4);
  CheckOptions fast;
  fast.top_fast_path = true;
  for (const auto& f : enumerate_endofunctions(4)) {
    for (std::size_t x = 0; x < 4; ++x) {
      REQUIRE(check_point(f, x, Semantics::standard, family) ==
              check_point(f, x, Semantics::standard, family, fast));
    }
  }
}

TEST_CASE("check_easy_direction") {
  const auto family = PartitionFamily::full_lattice(3);
  for (Semantics sem : {Semantics::standard, Semantics::point_supported}) {
    CHECK(check_easy_direction(Endofunction::identity(3), 2, sem, family));
    CHECK(check_easy_direction(Endofunction::constant(3, 0), 0, sem, family));
    CHECK(check_easy_direction(kRho, 1, sem, family));
    const auto s = build_system(kRho, 1, family);
    CHECK(audit_thread(s, easy_direction_witness(family, 1), sem).ok());
    CHECK_THROWS_AS(check_easy_direction(kRho, 0, sem, family), UsageError);
  }
}

TEST_CASE("exhaustive sweeps at n=1 and n=3") {
  for (Semantics sem : {Semantics::standard, Semantics::point_supported}) {
    const auto r = exhaustive_sweep(1, sem);
    CHECK(r.total_points == 1);
    CHECK(r.holds_count == 1);
    CHECK(r.counterexamples.empty());
    CHECK(r.complete);
  }
  const auto ps = exhaustive_sweep(3, Semantics::point_supported);
  CHECK(ps.total_points == 81);
  CHECK(ps.counterexamples.empty());
  CHECK(ps.holds_count == 81);

  const auto st = exhaustive_sweep(3, Semantics::standard);
  CHECK(st.total_points == 81);
  // 30 off-cycle points, frozen from an independent brute-force count.
  CHECK(off_cycle_points(enumerate_endofunctions(3)) == 30);
  CHECK(st.counterexamples.size() == 30);
  CHECK(st.forward_failures == 30);
  CHECK(st.reverse_failures == 0);
  CHECK(st.holds_count + st.counterexamples.size() == st.total_points);
  for (const auto& v : st.counterexamples) {
    CHECK_FALSE(v.periodic);
    CHECK(v.limit_nonempty);
    CHECK(v.thread_count == orbit_shape(v.map, v.x).cycle_length());
  }
  CHECK(std::is_sorted(st.counterexamples.begin(), st.counterexamples.end(),
                       [](const PointVerdict& a, const PointVerdict& b) {
                         return std::tie(a.map, a.x) < std::tie(b.map, b.x);
                       }));
}

TEST_CASE("sweeps guard their ceiling and ground-set size") {
  CHECK_THROWS_AS(exhaustive_sweep(7, Semantics::standard), ResourceGuardError);
  CHECK_THROWS_AS(exhaustive_sweep(20, Semantics::standard),
                  ResourceGuardError);
  CHECK_THROWS_AS(exhaustive_sweep(0, Semantics::standard),
                  EmptyGroundSetError);
  CHECK_THROWS_AS(
      exhaustive_sweep(3, Semantics::standard, PartitionFamily::full_lattice(2)),
      DimensionError);
  CHECK_THROWS_AS(sampled_sweep(13, Semantics::standard, 1, 1),
                  ResourceGuardError);
}

TEST_CASE("worker count never changes the report") {
  SweepOptions one;
  SweepOptions many;
  many.workers = 8;
  for (Semantics sem : {Semantics::standard, Semantics::point_supported}) {
    const auto a = exhaustive_sweep(4, sem, one);
    const auto b = exhaustive_sweep(4, sem, many);
    CHECK(a.counterexamples == b.counterexamples);
    CHECK(a.total_points == b.total_points);
    CHECK(a.holds_count == b.holds_count);
  }
}

TEST_CASE("sampled sweep at n=6") {
  const auto sample = sample_endofunctions(6, 1000, 42);
  CHECK(sample == sample_endofunctions(6, 1000, 42));
  CHECK(sample != sample_endofunctions(6, 1000, 43));

  SweepOptions opts;
  opts.workers = 4;
  const auto family = PartitionFamily::full_lattice(6);
  const auto ps =
      sampled_sweep(6, Semantics::point_supported, family, 1000, 42, opts);
  CHECK(ps.total_points == 6000);
  CHECK(ps.counterexamples.empty());

  CheckOptions fast;
  fast.top_fast_path = true;
  opts.check = fast;
  const auto st = sampled_sweep(6, Semantics::standard, family, 1000, 42, opts);
  CHECK(st.counterexamples.size() == off_cycle_points(sample));
  CHECK(st.seed == 42);
  CHECK(st.sample_size == 1000);

  const auto empty = sampled_sweep(6, Semantics::standard, family, 0, 42);
  CHECK(empty.total_points == 0);
  CHECK(empty.counterexamples.empty());
  CHECK(empty.complete);
}

TEST_CASE("sweeps over a given family") {
  // Just the one-block partition: every limit is the single block, so the
  // open direction fails exactly at the off-cycle points.
  const auto bottom = PartitionFamily::of({SetPartition::one_block(3)});
  const auto r = exhaustive_sweep(3, Semantics::standard, bottom);
  CHECK(r.counterexamples.size() == 30);
  CHECK_FALSE(r.family.full_lattice);
  for (const auto& v : r.counterexamples) CHECK(replay(v) == v);
}

TEST_CASE("a stopped sweep returns a partial report marked incomplete") {
  std::stop_source source;
  source.request_stop();
  SweepOptions opts;
  opts.stop = source.get_token();
  const auto r = exhaustive_sweep(4, Semantics::standard, opts);
  CHECK_FALSE(r.complete);
  CHECK(r.total_points == 0);
  CHECK(r.holds_count + r.counterexamples.size() == r.total_points);
}

TEST_CASE("counterexamples replay to identical verdicts") {
  const auto r = exhaustive_sweep(4, Semantics::standard);
  CHECK(r.counterexamples.size() == 456);
  for (const auto& v : r.counterexamples) REQUIRE(replay(v) == v);
}
