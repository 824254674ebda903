#pragma once

// Chiu's unsafe-node router. Each step consults only the classification of the
// current node's neighbors and keeps no history between steps.

#include "cuberoute/routing.hpp"
#include "cuberoute/safety.hpp"

namespace cuberoute {

/// Priority classes tried in order by a single step; lowest dimension wins
/// inside a class.
enum class ChiuBranch {
  Deliver,                 // already at the destination
  CloserSafe,              // D(c,t) and safe
  CloserOrdinaryUnsafe,    // D(c,t) and ordinary unsafe
  CloserStronglyUnsafe,    // D(c,t), strongly unsafe, and c strongly unsafe or h <= 2
  SidewaysSafe,            // N(c) - D(c,t) and safe
  SidewaysOrdinaryUnsafe,  // N(c) - D(c,t) and ordinary unsafe
  Error,                   // no admissible neighbor
};

struct ChiuStep {
  ChiuBranch branch = ChiuBranch::Error;
  NodeId next;  // meaningful for the four forwarding branches

  bool forwards() const { return branch != ChiuBranch::Deliver && branch != ChiuBranch::Error; }
};

/// One routing decision at `current` for destination `dest`. Both must be
/// non-faulty (std::invalid_argument otherwise).
ChiuStep chiu_step(NodeId current, NodeId dest, const SafetyClassification& cls);

/// Iterates chiu_step from `source` until delivery, a step error, or
/// `max_hops` forwarding steps.
RoutingOutcome chiu_route(NodeId source, NodeId dest, const SafetyClassification& cls,
                          int max_hops);

}  // namespace cuberoute
