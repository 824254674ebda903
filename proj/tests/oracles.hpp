#pragma once

// Test-only reference evaluators. They share no code with the library beyond
// its plain data types.

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "cuberoute/safety.hpp"

namespace cuberoute::oracle {

// Bit-by-bit Hamming distance.
inline int slow_distance(std::uint32_t a, std::uint32_t b, int n) {
  int d = 0;
  for (int i = 0; i < n; ++i) d += ((a >> i) & 1U) != ((b >> i) & 1U) ? 1 : 0;
  return d;
}

inline std::uint32_t neighbor_mask(std::uint32_t v, int n) {
  std::uint32_t m = 0;
  for (std::uint32_t u = 0; u < (1U << n); ++u) {
    if (slow_distance(u, v, n) == 1) m |= 1U << u;
  }
  return m;
}

// Least fixed point of the unsafe rule as the intersection of every closed
// node set (a set U with rule(v, U) => v in U for every non-faulty v). Node sets
// are bit masks, so this is limited to n <= 4.
inline std::vector<NodeStatus> brute_force_classification(int n, std::uint32_t fault_mask,
                                                          UnsafeRule rule) {
  const std::uint32_t nodes = 1U << n;
  std::vector<std::uint32_t> nbr(nodes);
  for (std::uint32_t v = 0; v < nodes; ++v) nbr[v] = neighbor_mask(v, n);

  const std::uint32_t all = nodes == 32 ? ~0U : (1U << nodes) - 1U;
  const std::uint32_t healthy = all & ~fault_mask;

  auto fires = [&](std::uint32_t v, std::uint32_t unsafe) {
    const int f = std::popcount(nbr[v] & fault_mask);
    const int u = std::popcount(nbr[v] & unsafe);
    return rule == UnsafeRule::Chiu ? (f >= 2 || u >= 3) : (f + u >= 2);
  };

  std::uint32_t lfp = healthy;
  // Enumerate subsets of the healthy nodes.
  for (std::uint32_t u = healthy;; u = (u - 1) & healthy) {
    bool closed = true;
    for (std::uint32_t v = 0; v < nodes && closed; ++v) {
      if (((healthy >> v) & 1U) && !((u >> v) & 1U) && fires(v, u)) closed = false;
    }
    if (closed) lfp &= u;
    if (u == 0) break;
  }

  std::vector<NodeStatus> status(nodes, NodeStatus::Safe);
  for (std::uint32_t v = 0; v < nodes; ++v) {
    if ((fault_mask >> v) & 1U) {
      status[v] = NodeStatus::Faulty;
    } else if ((lfp >> v) & 1U) {
      const std::uint32_t safe = healthy & ~lfp;
      status[v] = (nbr[v] & safe) ? NodeStatus::OrdinaryUnsafe : NodeStatus::StronglyUnsafe;
    }
  }
  return status;
}

// Unsafe set by worklist propagation: a node becoming unsafe re-queues its
// neighbors. Visit order differs from the library's full sweeps.
inline std::vector<bool> worklist_unsafe(const FaultMap& faults, UnsafeRule rule) {
  const int n = faults.cube().dimension();
  const std::uint32_t nodes = faults.node_count();
  std::vector<bool> unsafe(nodes, false);
  std::vector<std::uint32_t> work;
  for (std::uint32_t v = nodes; v-- > 0;) work.push_back(v);
  while (!work.empty()) {
    const std::uint32_t v = work.back();
    work.pop_back();
    if (unsafe[v] || faults.is_faulty(NodeId(v))) continue;
    int f = 0, u = 0;
    for (int j = 0; j < n; ++j) {
      const std::uint32_t w = v ^ (1U << j);
      f += faults.is_faulty(NodeId(w)) ? 1 : 0;
      u += unsafe[w] ? 1 : 0;
    }
    const bool fire = rule == UnsafeRule::Chiu ? (f >= 2 || u >= 3) : (f + u >= 2);
    if (fire) {
      unsafe[v] = true;
      for (int j = 0; j < n; ++j) work.push_back(v ^ (1U << j));
    }
  }
  return unsafe;
}

// Fault-avoiding distance by Floyd-Warshall over the healthy nodes.
inline std::vector<std::vector<int>> all_pairs_distance(const FaultMap& faults) {
  const int n = faults.cube().dimension();
  const std::uint32_t nodes = faults.node_count();
  constexpr int kInf = 1 << 20;
  std::vector<std::vector<int>> d(nodes, std::vector<int>(nodes, kInf));
  for (std::uint32_t a = 0; a < nodes; ++a) {
    if (faults.is_faulty(NodeId(a))) continue;
    d[a][a] = 0;
    for (std::uint32_t b = 0; b < nodes; ++b) {
      if (!faults.is_faulty(NodeId(b)) && slow_distance(a, b, n) == 1) d[a][b] = 1;
    }
  }
  for (std::uint32_t k = 0; k < nodes; ++k)
    for (std::uint32_t i = 0; i < nodes; ++i)
      for (std::uint32_t j = 0; j < nodes; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

// Cost of a candidate, summed over the fault bit-vector by index.
inline double reference_cost(const FaultMap& faults, std::uint32_t neighbor, std::uint32_t dest,
                             double k3, double k4, double eps) {
  const int n = faults.cube().dimension();
  double s = 0.0;
  for (std::uint32_t k = 0; k < faults.node_count(); ++k) {
    const double f = faults.is_faulty(NodeId(k)) ? 1.0 : 0.0;
    s += f / (slow_distance(neighbor, k, n) + eps);
  }
  return k3 * slow_distance(neighbor, dest, n) + k4 * s;
}

}  // namespace cuberoute::oracle
