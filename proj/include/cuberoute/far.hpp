#pragma once

// Fault avoidance routing (FAR).
//
// Every candidate next hop j gets a cost
//
//   G(j) = K3 * d(N_j, dest) + K4 * sum over faulty k of 1 / (d(N_j, k) + eps)
//
// and the lowest-cost candidate is chosen by a continuous-time Hopfield network
// with one neuron per dimension. The network minimizes
//
//   E(V) = K1 * (sum_j G(j) V_j)^2 + K2 * (sum_j V_j - 1)^2
//
// whose negative gradient is sum_k W_jk V_k + T_j with
//
//   W_jk = -(2 K1 G(j) G(k) + 2 K2),   T_j = 2 K2.
//
// The inputs follow dU_j/dt = sum_k W_jk V_k + T_j with V_j = sigmoid(gain * U_j),
// integrated by explicit Euler steps.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cuberoute/routing.hpp"
#include "cuberoute/safety.hpp"
#include "cuberoute/topology.hpp"

namespace cuberoute {

struct FarParams {
  double k1 = 0.01;   // weight of the cost term in the energy
  double k2 = 15.0;   // weight of the one-neuron-on term in the energy
  double k3 = 1.0;    // distance-to-destination weight in G
  double k4 = 0.42;   // fault-proximity weight in G
  double epsilon = 0.01;
  double dt = 1e-3;
  double gain = 50.0;
  double conv_tol = 1e-6;
  int conv_steps = 3;
  int max_iters = 10000;
  double winner_floor = 0.5;
  bool zero_diagonal = false;  // drop W_jj; the literal weights keep it

  /// Throws std::invalid_argument naming the first out-of-range field.
  void validate() const;

  friend bool operator==(const FarParams&, const FarParams&) = default;
};

/// G for the candidate `neighbor` when routing towards `dest`. The fault sum
/// runs over every faulty node, including `neighbor` itself if it is faulty.
double far_cost(const FaultMap& faults, NodeId neighbor, NodeId dest, const FarParams& params);

/// G for every neighbor of `current`, indexed by dimension.
std::vector<double> far_costs(const FaultMap& faults, NodeId current, NodeId dest,
                              const FarParams& params);

/// Admissible dimension with the smallest cost; ties go to the lowest index.
/// Throws std::invalid_argument when `candidates` is empty.
int far_argmin(std::span<const double> costs, DimensionSet candidates);

class HopfieldState {
 public:
  std::vector<double> costs;       // G per dimension
  DimensionSet candidates;         // admissible neurons; others are clamped to 0
  std::vector<double> inputs;      // U
  std::vector<double> outputs;     // V
  std::vector<double> thresholds;  // T
  int iterations = 0;

  int size() const { return static_cast<int>(costs.size()); }
  double weight(int j, int k) const { return weights_[index(j, k)]; }

 private:
  friend HopfieldState build_hopfield(std::span<const double>, DimensionSet, const FarParams&,
                                      std::uint64_t);
  std::size_t index(int j, int k) const {
    return static_cast<std::size_t>(j) * costs.size() + static_cast<std::size_t>(k);
  }
  std::vector<double> weights_;  // row-major n x n
};

/// Builds W and T from the costs and seeds the outputs at 1/|candidates| plus
/// uniform noise in [-0.01, 0.01] drawn from `decision_seed`.
/// Throws std::invalid_argument when `candidates` is empty or names a dimension
/// outside the cost vector.
HopfieldState build_hopfield(std::span<const double> costs, DimensionSet candidates,
                             const FarParams& params, std::uint64_t decision_seed);

double hopfield_energy(const HopfieldState& state, const FarParams& params);

/// sum_k W_jk V_k + T_j for every neuron (the Euler drive, i.e. -dE/dV_j).
std::vector<double> hopfield_drive(const HopfieldState& state);

struct HopfieldResult {
  std::optional<int> winner;  // empty when no output reaches the winner floor
  int iterations = 0;
};

using HopfieldObserver = std::function<void(const HopfieldState&)>;

/// Integrates the dynamics until max |dV| < conv_tol for conv_steps consecutive
/// steps or max_iters steps. `observer`, when set, sees the state after each step.
HopfieldResult hopfield_run(HopfieldState& state, const FarParams& params,
                            const HopfieldObserver& observer = {});

enum class DecisionMode { Hopfield, ArgminOracle };

struct HopTelemetry {
  int iterations = 0;         // Euler steps; 0 in oracle mode
  bool fallback = false;      // network gave no winner; far_argmin was used
  bool disagreement = false;  // network winner differs from far_argmin
};

struct FarRoute {
  RoutingOutcome outcome;
  std::vector<HopTelemetry> decisions;  // one per forwarding decision
};

/// Routes hop by hop over the non-faulty neighbors. The decision at hop h is
/// seeded with derive_seed(seed, h), so a route is reproducible from `seed`.
FarRoute far_route(NodeId source, NodeId dest, const FaultMap& faults, const FarParams& params,
                   int max_hops, DecisionMode mode, std::uint64_t seed);

}  // namespace cuberoute
