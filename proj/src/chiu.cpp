#include "cuberoute/chiu.hpp"

#include <stdexcept>
#include <string>

namespace cuberoute {

namespace {

void require_non_faulty(const SafetyClassification& cls, NodeId x, const char* role) {
  cls.cube().require_node(x);
  if (cls.is_faulty(x)) {
    throw std::invalid_argument(std::string(role) + " node " + std::to_string(x.value) +
                                " is faulty");
  }
}

// Lowest dimension in `dims` whose neighbor has status `wanted`, or -1.
int first_with_status(const SafetyClassification& cls, NodeId c, DimensionSet dims,
                      NodeStatus wanted) {
  for (int j : dims.to_vector()) {
    if (cls.status(flip(c, j)) == wanted) return j;
  }
  return -1;
}

}  // namespace

ChiuStep chiu_step(NodeId current, NodeId dest, const SafetyClassification& cls) {
  require_non_faulty(cls, current, "current");
  require_non_faulty(cls, dest, "destination");

  const int h = hamming(current, dest);
  if (h == 0) return {ChiuBranch::Deliver, current};

  const DimensionSet closer(current.value ^ dest.value);
  const DimensionSet sideways(cls.cube().all_dimensions().mask() & ~closer.mask());

  struct Rung {
    ChiuBranch branch;
    DimensionSet dims;
    NodeStatus status;
    bool enabled;
  };
  const Rung ladder[] = {
      {ChiuBranch::CloserSafe, closer, NodeStatus::Safe, true},
      {ChiuBranch::CloserOrdinaryUnsafe, closer, NodeStatus::OrdinaryUnsafe, true},
      {ChiuBranch::CloserStronglyUnsafe, closer, NodeStatus::StronglyUnsafe,
       cls.status(current) == NodeStatus::StronglyUnsafe || h <= 2},
      {ChiuBranch::SidewaysSafe, sideways, NodeStatus::Safe, true},
      {ChiuBranch::SidewaysOrdinaryUnsafe, sideways, NodeStatus::OrdinaryUnsafe, true},
  };
  for (const Rung& rung : ladder) {
    if (!rung.enabled) continue;
    const int j = first_with_status(cls, current, rung.dims, rung.status);
    if (j >= 0) return {rung.branch, flip(current, j)};
  }
  return {ChiuBranch::Error, current};
}

RoutingOutcome chiu_route(NodeId source, NodeId dest, const SafetyClassification& cls,
                          int max_hops) {
  require_non_faulty(cls, source, "source");
  require_non_faulty(cls, dest, "destination");
  if (max_hops < 1) throw std::invalid_argument("max_hops must be at least 1");

  RoutingOutcome out;
  out.path.push_back(source);
  NodeId current = source;
  while (true) {
    const ChiuStep step = chiu_step(current, dest, cls);
    if (step.branch == ChiuBranch::Deliver) {
      out.status = RouteStatus::Delivered;
      return out;
    }
    if (step.branch == ChiuBranch::Error) {
      out.status = RouteStatus::Undeliverable;
      return out;
    }
    if (out.hops() >= max_hops) {
      out.status = RouteStatus::HopLimitExceeded;
      return out;
    }
    current = step.next;
    out.path.push_back(current);
  }
}

}  // namespace cuberoute
