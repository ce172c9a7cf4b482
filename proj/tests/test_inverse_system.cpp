#include <random>
#include <vector>

#include "doctest.h"
#include "invlim/error.hpp"
#include "invlim/inverse_system.hpp"
#include "oracles.hpp"

using namespace invlim;

namespace {

const Endofunction kRho{std::vector<std::size_t>{1, 2, 1}};

std::vector<std::vector<std::size_t>> choices(const std::vector<Thread>& ts) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& t : ts) out.push_back(t.choice);
  return out;
}

// The thread picking, at every member, the block containing y.
Thread through(const PartitionFamily& family, std::size_t y) {
  Thread t;
  for (const auto& p : family.members()) t.choice.push_back(p.block_of(y));
  return t;
}

}  // namespace

TEST_CASE("semantics names round-trip") {
  CHECK(parse_semantics("standard") == Semantics::standard);
  CHECK(parse_semantics("point-supported") == Semantics::point_supported);
  CHECK(to_string(Semantics::point_supported) == "point-supported");
  CHECK_THROWS_AS(parse_semantics("strict"), UsageError);
}

TEST_CASE("PartitionFamily construction") {
  const auto full = PartitionFamily::full_lattice(3);
  CHECK(full.size() == 5);
  CHECK(full.is_full_lattice());
  CHECK(full.index_of(SetPartition::singletons(3)) == 4u);

  // Comparable pairs of Pi_3: 4 above the bottom, 4 below the top, plus none
  // among the three two-block partitions.
  CHECK(full.relations().size() == 7);

  const auto sub = PartitionFamily::of(
      {SetPartition::one_block(3), SetPartition::from_rgs({0, 0, 1})});
  CHECK_FALSE(sub.is_full_lattice());
  CHECK(sub.relations().size() == 1);

  // Listing every partition in any order still counts as the full lattice.
  auto shuffled = enumerate_partitions(3);
  std::reverse(shuffled.begin(), shuffled.end());
  CHECK(PartitionFamily::of(shuffled).is_full_lattice());

  CHECK_THROWS_AS(PartitionFamily::of({}), UsageError);
  CHECK_THROWS_AS(PartitionFamily::of({SetPartition::one_block(3),
                                       SetPartition::one_block(3)}),
                  ValidationError);
  CHECK_THROWS_AS(PartitionFamily::of({SetPartition::one_block(3),
                                       SetPartition::one_block(2)}),
                  DimensionError);
  CHECK_THROWS_AS(PartitionFamily::full_lattice(13), ResourceGuardError);
}

TEST_CASE("family relations are exactly the comparable pairs") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto family = PartitionFamily::full_lattice(n);
    const auto m = family.members();
    std::size_t expected = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (i != j && oracle::refines(m[i], m[j])) ++expected;
      }
    }
    CHECK(family.relations().size() == expected);
    for (const auto& r : family.relations()) {
      CHECK(oracle::refines(m[r.fine], m[r.coarse]));
    }
  }
}

TEST_CASE("build_system examples") {
  const auto full = PartitionFamily::full_lattice(3);
  const auto id = build_system(Endofunction::identity(3), 0, full);
  CHECK(id.nodes.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(id.nodes[i].blocks ==
          std::vector<std::size_t>{full.members()[i].block_of(0)});
  }
  const auto c = build_system(Endofunction::constant(3, 0), 2, full);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(c.nodes[i].blocks ==
          std::vector<std::size_t>{full.members()[i].block_of(0)});
  }
  const auto one = PartitionFamily::of({SetPartition::one_block(3)});
  const auto tiny = build_system(kRho, 0, one);
  CHECK(tiny.nodes.size() == 1);
  CHECK(tiny.nodes[0].blocks == std::vector<std::size_t>{0});
  CHECK(tiny.edges.empty());

  CHECK_THROWS_AS(build_system(Endofunction::identity(4), 0, full),
                  DimensionError);
  CHECK_THROWS_AS(build_system(kRho, 7, full), PointError);
}

TEST_CASE("edges land inside their target nodes and compose") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto family = PartitionFamily::full_lattice(n);
    for (const auto& f : enumerate_endofunctions(n)) {
      for (std::size_t x = 0; x < n; ++x) {
        const auto s = build_system(f, x, family);
        for (const auto& e : s.edges) {
          for (std::size_t a = 0; a < e.image.size(); ++a) {
            if (s.nodes[e.fine].contains(a)) {
              REQUIRE(s.nodes[e.coarse].contains(e.image[a]));
            } else {
              REQUIRE(e.image[a] == kNoImage);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("enumerate_threads on the identity map") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto family = PartitionFamily::full_lattice(n);
    for (std::size_t x = 0; x < n; ++x) {
      const auto s = build_system(Endofunction::identity(n), x, family);
      for (Semantics sem : {Semantics::standard, Semantics::point_supported}) {
        const auto list = enumerate_threads(s, sem);
        REQUIRE(list.threads.size() == 1);
        CHECK(list.threads[0] == through(family, x));
        CHECK_FALSE(list.truncated);
      }
    }
  }
}

TEST_CASE("constant map off its fixed point: the two semantics differ") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto family = PartitionFamily::full_lattice(n);
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t x = 0; x < n; ++x) {
        if (x == c) continue;
        const auto s = build_system(Endofunction::constant(n, c), x, family);
        CHECK(enumerate_threads(s, Semantics::point_supported).threads.empty());
        const auto standard = enumerate_threads(s, Semantics::standard);
        REQUIRE(standard.threads.size() == 1);
        CHECK(standard.threads[0] == through(family, c));
      }
    }
  }
}

TEST_CASE("constant map at n=3 agrees with brute-force product search") {
  const auto family = PartitionFamily::full_lattice(3);
  const std::vector<SetPartition> members(family.members().begin(),
                                          family.members().end());
  const auto f = Endofunction::constant(3, 0);
  for (std::size_t x = 1; x < 3; ++x) {
    const auto s = build_system(f, x, family);
    const auto brute = oracle::threads_by_product(f, x, members, false);
    // Frozen from the oracle: the single thread through c = 0, i.e. block 0
    // of every member.
    CHECK(brute == std::vector<std::vector<std::size_t>>{{0, 0, 0, 0, 0}});
    CHECK(choices(enumerate_threads(s, Semantics::standard).threads) == brute);
  }
}

TEST_CASE("search agrees with product enumeration for all maps at n<=3") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto family = PartitionFamily::full_lattice(n);
    const std::vector<SetPartition> members(family.members().begin(),
                                            family.members().end());
    for (const auto& f : enumerate_endofunctions(n)) {
      for (std::size_t x = 0; x < n; ++x) {
        const auto s = build_system(f, x, family);
        for (bool ps : {false, true}) {
          const auto sem = ps ? Semantics::point_supported : Semantics::standard;
          REQUIRE(choices(enumerate_threads(s, sem).threads) ==
                  oracle::threads_by_product(f, x, members, ps));
        }
      }
    }
  }
}

TEST_CASE("search agrees with product enumeration on random subfamilies") {
  std::mt19937_64 rng(7);
  const auto all4 = enumerate_partitions(4);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<SetPartition> members;
    for (const auto& p : all4) {
      if (rng() % 3 == 0) members.push_back(p);
    }
    if (members.empty() || members.size() > 7) continue;
    const auto family = PartitionFamily::of(members);
    const auto f = oracle::random_endofunction(4, rng);
    const std::size_t x = rng() % 4;
    const auto s = build_system(f, x, family);
    for (bool ps : {false, true}) {
      const auto sem = ps ? Semantics::point_supported : Semantics::standard;
      const auto list = enumerate_threads(s, sem);
      REQUIRE(choices(list.threads) ==
              oracle::threads_by_product(f, x, members, ps));
      for (const auto& t : list.threads) REQUIRE(audit_thread(s, t, sem).ok());
    }
  }
}

TEST_CASE("limit_via_top examples") {
  CHECK(limit_via_top(Endofunction::identity(3), 1).size() == 1);
  const auto rho = limit_via_top(kRho, 0);
  const auto family = PartitionFamily::full_lattice(3);
  CHECK(rho == std::vector<Thread>{through(family, 1), through(family, 2)});
  CHECK(limit_via_top(kRho, 0, Semantics::point_supported).empty());
  for (std::size_t x = 0; x < 3; ++x) {
    const auto c = limit_via_top(Endofunction::constant(3, 2), x);
    CHECK(c == std::vector<Thread>{through(family, 2)});
  }
  const auto s = build_system(kRho, 0, family);
  CHECK(enumerate_threads(s, Semantics::standard).threads == rho);

  const auto no_top = PartitionFamily::of({SetPartition::one_block(3)});
  CHECK_THROWS_AS(limit_via_top(build_system(kRho, 0, no_top),
                                Semantics::standard),
                  UsageError);
}

TEST_CASE("search and top fast path agree, n<=4 exhaustive and n=5 sampled") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto family = PartitionFamily::full_lattice(n);
    for (const auto& f : enumerate_endofunctions(n)) {
      for (std::size_t x = 0; x < n; ++x) {
        const auto s = build_system(f, x, family);
        for (Semantics sem : {Semantics::standard, Semantics::point_supported}) {
          const auto searched = enumerate_threads(s, sem).threads;
          REQUIRE(searched == limit_via_top(s, sem));
          for (const auto& t : searched) REQUIRE(audit_thread(s, t, sem).ok());
        }
      }
    }
  }
  std::mt19937_64 rng(2024);
  const auto family5 = PartitionFamily::full_lattice(5);
  for (int i = 0; i < 200; ++i) {
    const auto f = oracle::random_endofunction(5, rng);
    const std::size_t x = rng() % 5;
    const auto s = build_system(f, x, family5);
    REQUIRE(enumerate_threads(s, Semantics::standard).threads ==
            limit_via_top(s, Semantics::standard));
  }
}

TEST_CASE("point-supported threads are standard threads") {
  const auto family = PartitionFamily::full_lattice(4);
  for (const auto& f : enumerate_endofunctions(4)) {
    for (std::size_t x = 0; x < 4; ++x) {
      const auto s = build_system(f, x, family);
      const auto standard = enumerate_threads(s, Semantics::standard).threads;
      for (const auto& t :
           enumerate_threads(s, Semantics::point_supported).threads) {
        REQUIRE(std::binary_search(standard.begin(), standard.end(), t));
      }
    }
  }
}

TEST_CASE("threads over a larger family restrict to threads over a subfamily") {
  const auto all = enumerate_partitions(3);
  // Every nested pair of subfamilies F subset of G of Pi_3.
  for (unsigned big = 1; big < (1u << all.size()); ++big) {
    std::vector<SetPartition> g;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (big & (1u << i)) g.push_back(all[i]);
    }
    const auto gfam = PartitionFamily::of(g);
    for (unsigned small = big; small > 0; small = (small - 1) & big) {
      std::vector<SetPartition> f;
      std::vector<std::size_t> positions;  // index of each f member in g
      for (std::size_t i = 0, k = 0; i < all.size(); ++i) {
        if (!(big & (1u << i))) continue;
        if (small & (1u << i)) {
          f.push_back(all[i]);
          positions.push_back(k);
        }
        ++k;
      }
      const auto ffam = PartitionFamily::of(f);
      for (const auto& map : enumerate_endofunctions(3)) {
        for (std::size_t x = 0; x < 3; ++x) {
          const auto big_threads =
              enumerate_threads(build_system(map, x, gfam), Semantics::standard)
                  .threads;
          const auto small_threads =
              enumerate_threads(build_system(map, x, ffam), Semantics::standard)
                  .threads;
          for (const auto& t : big_threads) {
            Thread r;
            for (std::size_t k : positions) r.choice.push_back(t.choice[k]);
            REQUIRE(std::binary_search(small_threads.begin(),
                                       small_threads.end(), r));
          }
        }
      }
    }
  }
}

TEST_CASE("a family with no top can have many threads; cap truncates") {
  // Two incomparable two-block partitions of a 4-cycle; each recurrent set
  // has both blocks and nothing ties them together.
  const Endofunction cycle4({1, 2, 3, 0});
  const auto family = PartitionFamily::of(
      {SetPartition::from_rgs({0, 0, 1, 1}), SetPartition::from_rgs({0, 1, 0, 1})});
  const auto s = build_system(cycle4, 0, family);
  const auto all = enumerate_threads(s, Semantics::standard);
  CHECK(all.threads.size() == 4);
  CHECK_FALSE(all.truncated);
  const auto capped = enumerate_threads(s, Semantics::standard, 3);
  CHECK(capped.threads.size() == 3);
  CHECK(capped.truncated);
  CHECK(enumerate_threads(s, Semantics::point_supported).threads.size() == 1);
}

TEST_CASE("enumeration is deterministic") {
  const auto family = PartitionFamily::full_lattice(4);
  const Endofunction f({1, 2, 3, 1});
  const auto s = build_system(f, 0, family);
  const auto a = enumerate_threads(s, Semantics::standard).threads;
  const auto b = enumerate_threads(s, Semantics::standard).threads;
  CHECK(a == b);
  CHECK(a.size() == 3);
}

TEST_CASE("audit_thread reports violations") {
  const auto family = PartitionFamily::full_lattice(3);
  const auto s = build_system(kRho, 0, family);
  // Block containing 0 everywhere: not recurrent at the singleton partition.
  const auto at_x = through(family, 0);
  const auto audit = audit_thread(s, at_x, Semantics::standard);
  CHECK_FALSE(audit.ok());
  CHECK(audit.membership_checks == 5);
  // Mixing the threads through 1 and 2 breaks compatibility.
  Thread mixed = through(family, 1);
  mixed.choice[4] = 2;
  CHECK_FALSE(audit_thread(s, mixed, Semantics::standard).ok());
  CHECK_FALSE(audit_thread(s, through(family, 1), Semantics::point_supported)
                  .ok());
  CHECK(audit_thread(s, through(family, 1), Semantics::standard).ok());
  CHECK_FALSE(audit_thread(s, Thread{{0}}, Semantics::standard).ok());
}
