#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cuberoute/safety.hpp"
#include "cuberoute/topology.hpp"

namespace cuberoute {

enum class RouteStatus { Delivered, Undeliverable, HopLimitExceeded };

std::string_view to_string(RouteStatus status);

struct RoutingOutcome {
  std::vector<NodeId> path;  // starts at the source
  RouteStatus status = RouteStatus::Undeliverable;

  int hops() const { return static_cast<int>(path.size()) - 1; }
};

/// Default hop budget for an n-cube.
constexpr int default_max_hops(int dimension) { return 4 * dimension; }

/// Checks the structural path invariants: non-empty, starts at `source`,
/// consecutive entries are neighbors, no faulty entry, and a Delivered outcome
/// ends at `dest`. Returns a description of the first violation, if any.
std::optional<std::string> audit_path(const FaultMap& faults, NodeId source, NodeId dest,
                                      const RoutingOutcome& outcome);

}  // namespace cuberoute
