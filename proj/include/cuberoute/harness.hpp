#pragma once

// Monte Carlo experiment engine. A case fixes the cube dimension, the number
// of faulty nodes and the router; every run of the case draws a fresh fault
// map and a fresh pair of non-faulty endpoints, routes once and is audited
// against a BFS shortest-path oracle.
//
// All accumulators are integers, so partial statistics merge exactly and
// parallel execution reproduces serial output bit for bit.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cuberoute/far.hpp"
#include "cuberoute/safety.hpp"
#include "cuberoute/topology.hpp"

namespace cuberoute {

enum class RouterKind { Chiu, FarHopfield, FarArgmin };

std::string_view to_string(RouterKind router);
std::optional<RouterKind> router_from_string(std::string_view name);

struct CaseSpec {
  int dimension = 4;
  int fault_count = 0;
  int runs = 1000;
  std::uint64_t seed = 1;
  RouterKind router = RouterKind::Chiu;
  FarParams params;
  UnsafeRule rule = UnsafeRule::Chiu;
  std::optional<int> max_hops;  // defaults to 4 * dimension

  int effective_max_hops() const { return max_hops.value_or(default_max_hops(dimension)); }

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

struct CaseStats {
  // Echo of the case.
  int dimension = 0;
  int fault_count = 0;
  RouterKind router = RouterKind::Chiu;
  int runs = 0;
  std::uint64_t seed = 0;

  // Outcomes; delivered + undeliverable + hop_limit == runs.
  std::int64_t delivered = 0;
  std::int64_t undeliverable = 0;
  std::int64_t hop_limit = 0;

  std::int64_t unreachable = 0;           // BFS found no fault-free path
  std::int64_t algorithmic_failures = 0;  // not delivered although BFS found a path
  std::int64_t path_violations = 0;       // delivered paths failing the audit
  std::int64_t shorter_than_bfs = 0;      // delivered in fewer hops than BFS allows

  std::int64_t hop_sum = 0;       // over delivered runs
  std::int64_t distance_sum = 0;  // Hamming distance over all runs
  std::int64_t optimal_sum = 0;   // BFS distance over delivered runs

  // Hopfield decisions (FarHopfield only).
  std::int64_t decisions = 0;
  std::int64_t iteration_sum = 0;
  std::int64_t max_iterations = 0;
  std::int64_t fallbacks = 0;
  std::int64_t disagreements = 0;

  /// Mean hops over delivered runs; NaN when nothing was delivered.
  double mpl() const;
  /// Mean Hamming distance of the sampled endpoint pairs.
  double fault_free_mpl() const;
  double pl_over_mpl() const;
  /// Mean Euler steps per Hopfield decision; empty for routers without one.
  std::optional<double> mean_iterations() const;
  bool uses_hopfield() const { return router == RouterKind::FarHopfield; }

  /// Adds the counters of `other` (same case, disjoint runs).
  void merge(const CaseStats& other);

  friend bool operator==(const CaseStats&, const CaseStats&) = default;
};

/// Shortest path length from source to dest avoiding faulty nodes, or empty
/// when dest cannot be reached.
std::optional<int> bfs_shortest(const FaultMap& faults, NodeId source, NodeId dest);

/// Runs [first_run, last_run) of `spec` without validation or threading.
CaseStats run_case_range(const CaseSpec& spec, int first_run, int last_run);

/// Runs every run of `spec`, split across `threads` workers.
CaseStats run_case(const CaseSpec& spec, int threads = 1);

class SweepError : public std::runtime_error {
 public:
  SweepError(std::size_t case_index, const std::string& what)
      : std::runtime_error("case " + std::to_string(case_index) + ": " + what),
        case_index_(case_index) {}
  std::size_t case_index() const { return case_index_; }

 private:
  std::size_t case_index_;
};

/// Runs each case independently; results follow input order. Throws
/// SweepError for the lowest-indexed failing case.
std::vector<CaseStats> sweep(std::span<const CaseSpec> specs, int threads = 1);

}  // namespace cuberoute
