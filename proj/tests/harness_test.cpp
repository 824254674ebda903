#include "cuberoute/harness.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace cuberoute {
namespace {

CaseSpec small_case(RouterKind router, int n, int faults, int runs = 200) {
  CaseSpec spec;
  spec.dimension = n;
  spec.fault_count = faults;
  spec.runs = runs;
  spec.seed = 42;
  spec.router = router;
  return spec;
}

TEST(Bfs, Examples) {
  const FaultMap none(Hypercube(4));
  EXPECT_EQ(bfs_shortest(none, NodeId(0b0101), NodeId(0b1010)), 4);
  EXPECT_EQ(bfs_shortest(none, NodeId(3), NodeId(3)), 0);

  std::vector<NodeId> f{NodeId(0b01), NodeId(0b10)};
  const FaultMap blocked = fault_map_from_list(Hypercube(2), f);
  EXPECT_FALSE(bfs_shortest(blocked, NodeId(0b00), NodeId(0b11)).has_value());
  EXPECT_THROW(bfs_shortest(blocked, NodeId(0b01), NodeId(0b11)), std::invalid_argument);
}

TEST(Bfs, MatchesFloydWarshall) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const Hypercube cube(n);
    const FaultMap m =
        random_fault_map(cube, static_cast<int>(rng() % (cube.node_count() / 2 + 1)), rng());
    const auto all = oracle::all_pairs_distance(m);
    for (std::uint32_t s = 0; s < cube.node_count(); ++s) {
      for (std::uint32_t t = 0; t < cube.node_count(); ++t) {
        if (m.is_faulty(NodeId(s)) || m.is_faulty(NodeId(t))) continue;
        const auto d = bfs_shortest(m, NodeId(s), NodeId(t));
        if (all[s][t] >= (1 << 20)) {
          EXPECT_FALSE(d.has_value());
        } else {
          ASSERT_TRUE(d.has_value());
          EXPECT_EQ(*d, all[s][t]);
          EXPECT_GE(*d, hamming(NodeId(s), NodeId(t)));
        }
      }
    }
  }
}

TEST(CaseSpec, Validation) {
  CaseSpec spec = small_case(RouterKind::Chiu, 3, 6);
  EXPECT_NO_THROW(spec.validate());
  spec.fault_count = 7;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.fault_count = -1;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = small_case(RouterKind::Chiu, 3, 0, 0);
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = small_case(RouterKind::FarHopfield, 3, 0);
  spec.params.gain = 0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  EXPECT_EQ(small_case(RouterKind::Chiu, 5, 0).effective_max_hops(), 20);
}

TEST(RunCase, FaultFreeIsOptimalForEveryRouter) {
  for (RouterKind router : {RouterKind::Chiu, RouterKind::FarHopfield, RouterKind::FarArgmin}) {
    const CaseStats s = run_case(small_case(router, 5, 0));
    EXPECT_EQ(s.delivered, 200);
    EXPECT_EQ(s.pl_over_mpl(), 1.0) << to_string(router);
    EXPECT_EQ(s.hop_sum, s.distance_sum);
  }
}

TEST(RunCase, CountersAreConsistent) {
  for (RouterKind router : {RouterKind::Chiu, RouterKind::FarHopfield, RouterKind::FarArgmin}) {
    for (int faults : {3, 8, 14}) {
      const CaseStats s = run_case(small_case(router, 4, faults, 150));
      EXPECT_EQ(s.runs, 150);
      EXPECT_EQ(s.delivered + s.undeliverable + s.hop_limit, s.runs);
      EXPECT_EQ(s.path_violations, 0);
      EXPECT_EQ(s.shorter_than_bfs, 0);
      EXPECT_GE(s.hop_sum, s.optimal_sum);
      EXPECT_LE(s.unreachable, s.undeliverable + s.hop_limit);
      EXPECT_EQ(s.algorithmic_failures + s.unreachable, s.undeliverable + s.hop_limit);
      if (router == RouterKind::FarHopfield) {
        EXPECT_GT(s.decisions, 0);
        EXPECT_TRUE(s.mean_iterations().has_value());
      } else {
        EXPECT_EQ(s.decisions, 0);
        EXPECT_FALSE(s.mean_iterations().has_value());
      }
    }
  }
}

TEST(RunCase, DeterministicAndThreadCountInvariant) {
  const CaseSpec spec = small_case(RouterKind::FarHopfield, 5, 6, 90);
  const CaseStats serial = run_case(spec);
  EXPECT_EQ(serial, run_case(spec));
  EXPECT_EQ(serial, run_case(spec, 4));
  EXPECT_EQ(serial, run_case(spec, 1000));
}

TEST(RunCase, RoutersSeeTheSameEndpoints) {
  // Same seed means the same fault maps and endpoint pairs.
  const CaseStats chiu = run_case(small_case(RouterKind::Chiu, 5, 5));
  const CaseStats far = run_case(small_case(RouterKind::FarArgmin, 5, 5));
  EXPECT_EQ(chiu.distance_sum, far.distance_sum);
  EXPECT_EQ(chiu.unreachable, far.unreachable);
}

TEST(CaseStats, MergeIsAssociativeAndCommutative) {
  const CaseSpec spec = small_case(RouterKind::FarHopfield, 4, 5, 120);
  const CaseStats a = run_case_range(spec, 0, 40);
  const CaseStats b = run_case_range(spec, 40, 90);
  const CaseStats c = run_case_range(spec, 90, 120);

  CaseStats left = a;
  left.merge(b);
  left.merge(c);
  CaseStats bc = b;
  bc.merge(c);
  CaseStats right = a;
  right.merge(bc);
  CaseStats shuffled = c;
  shuffled.merge(a);
  shuffled.merge(b);

  EXPECT_EQ(left, right);
  EXPECT_EQ(left, shuffled);
  EXPECT_EQ(left, run_case(spec));
}

TEST(Sweep, OrderAndEquivalence) {
  std::vector<CaseSpec> specs;
  for (int n : {3, 4, 5}) specs.push_back(small_case(RouterKind::FarHopfield, n, 4, 60));
  const auto serial = sweep(specs, 1);
  ASSERT_EQ(serial.size(), 3U);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    EXPECT_EQ(serial[i].dimension, specs[i].dimension);
    EXPECT_EQ(serial[i], run_case(specs[i]));
  }
  EXPECT_EQ(serial, sweep(specs, 3));
}

TEST(Sweep, ErrorNamesTheCase) {
  std::vector<CaseSpec> specs{small_case(RouterKind::Chiu, 3, 1, 10),
                              small_case(RouterKind::Chiu, 3, 7, 10)};
  try {
    sweep(specs, 2);
    FAIL() << "expected SweepError";
  } catch (const SweepError& e) {
    EXPECT_EQ(e.case_index(), 1U);
  }
  EXPECT_THROW(sweep(std::vector<CaseSpec>{}, 1), std::invalid_argument);
}

}  // namespace
}  // namespace cuberoute
