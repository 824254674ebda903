#include "cuberoute/safety.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cuberoute {

FaultMap::FaultMap(const Hypercube& cube) : cube_(cube), bits_(cube.node_count(), false) {}

void FaultMap::mark_faulty(NodeId x) {
  cube_.require_node(x);
  if (bits_[x.value]) return;
  bits_[x.value] = true;
  faulty_.insert(std::upper_bound(faulty_.begin(), faulty_.end(), x), x);
}

FaultMap fault_map_from_list(const Hypercube& cube, std::span<const NodeId> faulty) {
  FaultMap map(cube);
  for (NodeId x : faulty) map.mark_faulty(x);
  return map;
}

FaultMap random_fault_map(const Hypercube& cube, int count, Rng& rng,
                          std::span<const NodeId> excluded) {
  std::vector<bool> blocked(cube.node_count(), false);
  std::uint32_t blocked_count = 0;
  for (NodeId x : excluded) {
    cube.require_node(x);
    if (!blocked[x.value]) {
      blocked[x.value] = true;
      ++blocked_count;
    }
  }
  const std::uint32_t available = cube.node_count() - blocked_count;
  if (count < 0 || static_cast<std::uint32_t>(count) > available) {
    throw std::invalid_argument("cannot place " + std::to_string(count) +
                                " faults among " + std::to_string(available) +
                                " eligible nodes");
  }

  FaultMap map(cube);
  if (static_cast<std::uint32_t>(count) * 2 <= available) {
    // Sparse: rejection sampling touches O(count) nodes.
    while (map.fault_count() < count) {
      const NodeId x(static_cast<std::uint32_t>(uniform_below(rng, cube.node_count())));
      if (!blocked[x.value] && !map.is_faulty(x)) map.mark_faulty(x);
    }
    return map;
  }

  // Dense: partial Fisher-Yates over the eligible nodes.
  std::vector<std::uint32_t> pool;
  pool.reserve(available);
  for (std::uint32_t i = 0; i < cube.node_count(); ++i) {
    if (!blocked[i]) pool.push_back(i);
  }
  for (int k = 0; k < count; ++k) {
    const auto pick = k + uniform_below(rng, pool.size() - static_cast<std::size_t>(k));
    std::swap(pool[static_cast<std::size_t>(k)], pool[pick]);
    map.mark_faulty(NodeId(pool[static_cast<std::size_t>(k)]));
  }
  return map;
}

FaultMap random_fault_map(const Hypercube& cube, int count, std::uint64_t seed,
                          std::span<const NodeId> excluded) {
  Rng rng(seed);
  return random_fault_map(cube, count, rng, excluded);
}

std::string_view to_string(UnsafeRule rule) {
  switch (rule) {
    case UnsafeRule::Chiu: return "chiu";
    case UnsafeRule::Lee: return "lee";
  }
  return "?";
}

std::string_view to_string(NodeStatus status) {
  switch (status) {
    case NodeStatus::Faulty: return "faulty";
    case NodeStatus::Safe: return "safe";
    case NodeStatus::OrdinaryUnsafe: return "ordinary-unsafe";
    case NodeStatus::StronglyUnsafe: return "strongly-unsafe";
  }
  return "?";
}

SafetyClassification::SafetyClassification(Hypercube cube, UnsafeRule rule,
                                           std::vector<NodeStatus> status)
    : cube_(cube), rule_(rule), status_(std::move(status)) {
  if (status_.size() != cube_.node_count()) {
    throw std::invalid_argument("status vector length does not match node count");
  }
}

int SafetyClassification::count(NodeStatus s) const {
  return static_cast<int>(std::count(status_.begin(), status_.end(), s));
}

SafetyClassification classify(const FaultMap& faults, UnsafeRule rule) {
  const Hypercube& cube = faults.cube();
  const int n = cube.dimension();
  const std::uint32_t nodes = cube.node_count();

  // Pass 1: fixed point of the unsafe rule. The unsafe set only grows, so
  // repeated sweeps terminate.
  std::vector<bool> unsafe(nodes, false);
  std::vector<std::uint8_t> faulty_neighbors(nodes, 0);
  for (NodeId f : faults.faulty_nodes()) {
    for (int j = 0; j < n; ++j) ++faulty_neighbors[flip(f, j).value];
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint32_t i = 0; i < nodes; ++i) {
      const NodeId x(i);
      if (unsafe[i] || faults.is_faulty(x)) continue;
      int unsafe_count = 0;
      for (int j = 0; j < n; ++j) unsafe_count += unsafe[flip(x, j).value] ? 1 : 0;
      if (unsafe_rule_fires(rule, faulty_neighbors[i], unsafe_count)) {
        unsafe[i] = true;
        changed = true;
      }
    }
  }

  // Pass 2: split the unsafe set by whether a safe neighbor exists.
  std::vector<NodeStatus> status(nodes, NodeStatus::Safe);
  for (std::uint32_t i = 0; i < nodes; ++i) {
    const NodeId x(i);
    if (faults.is_faulty(x)) {
      status[i] = NodeStatus::Faulty;
      continue;
    }
    if (!unsafe[i]) continue;
    bool has_safe_neighbor = false;
    for (int j = 0; j < n && !has_safe_neighbor; ++j) {
      const NodeId y = flip(x, j);
      has_safe_neighbor = !faults.is_faulty(y) && !unsafe[y.value];
    }
    status[i] = has_safe_neighbor ? NodeStatus::OrdinaryUnsafe : NodeStatus::StronglyUnsafe;
  }
  return SafetyClassification(cube, rule, std::move(status));
}

}  // namespace cuberoute
