#pragma once

// Fault maps and the safe / unsafe node classification used by the classical
// router.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cuberoute/random.hpp"
#include "cuberoute/topology.hpp"

namespace cuberoute {

/// One bit per node; bit i set iff node i is faulty. Also keeps the faulty
/// addresses in ascending order for cost evaluations that sum over faults.
class FaultMap {
 public:
  /// Fault-free map for `cube`.
  explicit FaultMap(const Hypercube& cube);

  const Hypercube& cube() const { return cube_; }
  std::uint32_t node_count() const { return cube_.node_count(); }

  bool is_faulty(NodeId x) const { return bits_[x.value]; }
  int fault_count() const { return static_cast<int>(faulty_.size()); }
  std::span<const NodeId> faulty_nodes() const { return faulty_; }

  void mark_faulty(NodeId x);

  friend bool operator==(const FaultMap& a, const FaultMap& b) {
    return a.cube_ == b.cube_ && a.bits_ == b.bits_;
  }

 private:
  Hypercube cube_;
  std::vector<bool> bits_;
  std::vector<NodeId> faulty_;
};

/// Throws std::out_of_range if any listed node is outside the cube.
FaultMap fault_map_from_list(const Hypercube& cube, std::span<const NodeId> faulty);

/// Exactly `count` distinct faulty nodes drawn uniformly from the nodes not in
/// `excluded`. Throws std::invalid_argument when that is impossible.
FaultMap random_fault_map(const Hypercube& cube, int count, Rng& rng,
                          std::span<const NodeId> excluded = {});
FaultMap random_fault_map(const Hypercube& cube, int count, std::uint64_t seed,
                          std::span<const NodeId> excluded = {});

enum class UnsafeRule {
  Chiu,  // >= 2 faulty neighbors, or >= 3 unsafe neighbors
  Lee,   // >= 2 neighbors that are faulty or unsafe, counted together
};

std::string_view to_string(UnsafeRule rule);

enum class NodeStatus : std::uint8_t { Faulty, Safe, OrdinaryUnsafe, StronglyUnsafe };

std::string_view to_string(NodeStatus status);

class SafetyClassification {
 public:
  SafetyClassification(Hypercube cube, UnsafeRule rule, std::vector<NodeStatus> status);

  const Hypercube& cube() const { return cube_; }
  UnsafeRule rule() const { return rule_; }
  NodeStatus status(NodeId x) const { return status_[x.value]; }
  std::span<const NodeStatus> statuses() const { return status_; }

  bool is_faulty(NodeId x) const { return status(x) == NodeStatus::Faulty; }
  bool is_safe(NodeId x) const { return status(x) == NodeStatus::Safe; }
  bool is_unsafe(NodeId x) const {
    return status(x) == NodeStatus::OrdinaryUnsafe || status(x) == NodeStatus::StronglyUnsafe;
  }

  int count(NodeStatus s) const;

  friend bool operator==(const SafetyClassification&, const SafetyClassification&) = default;

 private:
  Hypercube cube_;
  UnsafeRule rule_;
  std::vector<NodeStatus> status_;
};

/// Least fixed point of the unsafe rule, then the strongly/ordinary split:
/// an unsafe node with no safe neighbor is strongly unsafe.
SafetyClassification classify(const FaultMap& faults, UnsafeRule rule);

/// True when the rule marks a non-faulty node with these neighbor counts unsafe.
constexpr bool unsafe_rule_fires(UnsafeRule rule, int faulty_neighbors, int unsafe_neighbors) {
  switch (rule) {
    case UnsafeRule::Chiu:
      return faulty_neighbors >= 2 || unsafe_neighbors >= 3;
    case UnsafeRule::Lee:
      return faulty_neighbors + unsafe_neighbors >= 2;
  }
  return false;
}

}  // namespace cuberoute
