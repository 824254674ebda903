#include "cuberoute/routing.hpp"

namespace cuberoute {

std::string_view to_string(RouteStatus status) {
  switch (status) {
    case RouteStatus::Delivered: return "delivered";
    case RouteStatus::Undeliverable: return "undeliverable";
    case RouteStatus::HopLimitExceeded: return "hop-limit";
  }
  return "?";
}

std::optional<std::string> audit_path(const FaultMap& faults, NodeId source, NodeId dest,
                                      const RoutingOutcome& outcome) {
  const auto& path = outcome.path;
  if (path.empty()) return "empty path";
  if (path.front() != source) return "path does not start at the source";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!faults.cube().contains(path[i])) {
      return "entry " + std::to_string(i) + " is outside the cube";
    }
    if (faults.is_faulty(path[i])) {
      return "entry " + std::to_string(i) + " (node " + std::to_string(path[i].value) +
             ") is faulty";
    }
    if (i > 0 && hamming(path[i - 1], path[i]) != 1) {
      return "entries " + std::to_string(i - 1) + " and " + std::to_string(i) +
             " are not neighbors";
    }
    if (static_cast<int>(i % 2) != hamming(source, path[i]) % 2) {
      return "entry " + std::to_string(i) + " breaks bit-flip parity";
    }
  }
  if (outcome.status == RouteStatus::Delivered) {
    if (path.back() != dest) return "delivered path does not end at the destination";
    if (outcome.hops() < hamming(source, dest)) return "delivered in fewer hops than the distance";
  }
  return std::nullopt;
}

}  // namespace cuberoute
