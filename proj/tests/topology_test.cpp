#include "cuberoute/topology.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

namespace cuberoute {
namespace {

TEST(Hypercube, RejectsDimensionOutOfRange) {
  EXPECT_THROW(Hypercube(0), std::invalid_argument);
  EXPECT_THROW(Hypercube(31), std::invalid_argument);
  EXPECT_EQ(Hypercube(30).node_count(), 1U << 30);
  EXPECT_EQ(Hypercube(1).node_count(), 2U);
}

TEST(Hypercube, HammingDistanceExamples) {
  const Hypercube cube(4);
  EXPECT_EQ(cube.hamming_distance(NodeId(0b0000), NodeId(0b1111)), 4);
  EXPECT_EQ(cube.hamming_distance(NodeId(0b1010), NodeId(0b1010)), 0);
  EXPECT_EQ(cube.hamming_distance(NodeId(0b0101), NodeId(0b0110)), 2);
  EXPECT_THROW(cube.hamming_distance(NodeId(16), NodeId(0)), std::out_of_range);
}

TEST(Hypercube, NeighborInDimension) {
  const Hypercube cube(3);
  EXPECT_EQ(cube.neighbor_in_dim(NodeId(0b000), 0), NodeId(0b001));
  EXPECT_EQ(cube.neighbor_in_dim(NodeId(0b001), 0), NodeId(0b000));
  EXPECT_EQ(cube.neighbor_in_dim(NodeId(0b101), 1), NodeId(0b111));
  EXPECT_THROW(cube.neighbor_in_dim(NodeId(0), 3), std::out_of_range);
  EXPECT_THROW(cube.neighbor_in_dim(NodeId(0), -1), std::out_of_range);
}

TEST(Hypercube, NeighborsAreInDimensionOrder) {
  const Hypercube cube(3);
  EXPECT_EQ(cube.neighbors(NodeId(0b000)),
            (std::vector<NodeId>{NodeId(0b001), NodeId(0b010), NodeId(0b100)}));
  EXPECT_EQ(cube.neighbors(NodeId(0b111)),
            (std::vector<NodeId>{NodeId(0b110), NodeId(0b101), NodeId(0b011)}));
}

TEST(Hypercube, TowardsDestination) {
  const Hypercube cube(3);
  EXPECT_EQ(cube.towards_destination(NodeId(0b000), NodeId(0b011)).to_vector(),
            (std::vector<int>{0, 1}));
  EXPECT_TRUE(cube.towards_destination(NodeId(0b110), NodeId(0b110)).empty());
  EXPECT_EQ(cube.towards_destination(NodeId(0b000), NodeId(0b111)).to_vector(),
            (std::vector<int>{0, 1, 2}));
}

TEST(DimensionSet, Basics) {
  DimensionSet s;
  EXPECT_TRUE(s.empty());
  EXPECT_EQ(s.lowest(), -1);
  s.insert(3);
  s.insert(1);
  EXPECT_EQ(s.size(), 2);
  EXPECT_EQ(s.lowest(), 1);
  EXPECT_TRUE(s.contains(3));
  s.erase(1);
  EXPECT_EQ(s.to_vector(), std::vector<int>{3});
}

// Metric and neighbor properties on random samples across dimensions.
TEST(HypercubeProperties, MetricAndNeighborLaws) {
  std::mt19937 rng(7);
  for (int n = 1; n <= 12; ++n) {
    const Hypercube cube(n);
    std::uniform_int_distribution<std::uint32_t> pick(0, cube.node_count() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      const NodeId x(pick(rng)), y(pick(rng)), z(pick(rng));
      const int dxy = cube.hamming_distance(x, y);
      EXPECT_EQ(dxy, cube.hamming_distance(y, x));
      EXPECT_LE(cube.hamming_distance(x, z), dxy + cube.hamming_distance(y, z));
      EXPECT_LE(dxy, n);

      const DimensionSet towards = cube.towards_destination(x, y);
      EXPECT_EQ(towards.size(), dxy);
      for (int j : towards.to_vector()) {
        EXPECT_EQ(cube.hamming_distance(cube.neighbor_in_dim(x, j), y), dxy - 1);
      }

      const auto nx = cube.neighbors(x);
      ASSERT_EQ(static_cast<int>(nx.size()), n);
      for (int j = 0; j < n; ++j) {
        EXPECT_EQ(cube.hamming_distance(x, nx[j]), 1);
        EXPECT_EQ(cube.neighbor_in_dim(nx[j], j), x);
        const auto back = cube.neighbors(nx[j]);
        EXPECT_NE(std::find(back.begin(), back.end(), x), back.end());
      }
    }
  }
}

}  // namespace
}  // namespace cuberoute
