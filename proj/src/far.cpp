#include "cuberoute/far.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cuberoute/random.hpp"

namespace cuberoute {

namespace {

void require(bool ok, const char* field) {
  if (!ok) throw std::invalid_argument(std::string("invalid FAR parameter: ") + field);
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void require_candidates(std::span<const double> costs, DimensionSet candidates) {
  if (candidates.empty()) throw std::invalid_argument("no admissible candidate");
  if (costs.size() < 32 && (candidates.mask() >> costs.size()) != 0) {
    throw std::invalid_argument("candidate dimension outside the cost vector");
  }
}

}  // namespace

void FarParams::validate() const {
  require(k1 > 0, "k1");
  require(k2 > 0, "k2");
  require(k3 > 0, "k3");
  require(k4 > 0, "k4");
  require(epsilon > 0, "epsilon");
  require(dt > 0, "dt");
  require(gain > 0, "gain");
  require(conv_tol > 0, "conv_tol");
  require(conv_steps >= 1, "conv_steps");
  require(max_iters >= 1, "max_iters");
  require(winner_floor > 0 && winner_floor < 1, "winner_floor");
}

double far_cost(const FaultMap& faults, NodeId neighbor, NodeId dest, const FarParams& params) {
  // Group faults by distance first so that candidates with the same distance
  // profile get bit-identical costs regardless of fault order.
  std::array<std::int64_t, kMaxDimension + 1> at_distance{};
  for (NodeId k : faults.faulty_nodes()) ++at_distance[static_cast<std::size_t>(hamming(neighbor, k))];
  double proximity = 0.0;
  for (int d = 0; d <= faults.cube().dimension(); ++d) {
    const auto count = at_distance[static_cast<std::size_t>(d)];
    if (count != 0) proximity += static_cast<double>(count) / (d + params.epsilon);
  }
  return params.k3 * hamming(neighbor, dest) + params.k4 * proximity;
}

std::vector<double> far_costs(const FaultMap& faults, NodeId current, NodeId dest,
                              const FarParams& params) {
  const int n = faults.cube().dimension();
  std::vector<double> costs(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    costs[static_cast<std::size_t>(j)] = far_cost(faults, flip(current, j), dest, params);
  }
  return costs;
}

int far_argmin(std::span<const double> costs, DimensionSet candidates) {
  require_candidates(costs, candidates);
  int best = -1;
  for (int j : candidates.to_vector()) {
    if (best < 0 || costs[static_cast<std::size_t>(j)] < costs[static_cast<std::size_t>(best)]) {
      best = j;
    }
  }
  return best;
}

HopfieldState build_hopfield(std::span<const double> costs, DimensionSet candidates,
                             const FarParams& params, std::uint64_t decision_seed) {
  require_candidates(costs, candidates);
  const std::size_t n = costs.size();

  HopfieldState s;
  s.costs.assign(costs.begin(), costs.end());
  s.candidates = candidates;
  s.thresholds.assign(n, 2.0 * params.k2);
  s.weights_.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      s.weights_[j * n + k] = -(2.0 * params.k1 * (costs[j] * costs[k]) + 2.0 * params.k2);
    }
    if (params.zero_diagonal) s.weights_[j * n + j] = 0.0;
  }

  // Symmetric start at 1/m with small deterministic noise; U from the inverse
  // sigmoid. Outputs stay strictly inside (0, 1) so U is finite.
  s.inputs.assign(n, 0.0);
  s.outputs.assign(n, 0.0);
  Rng rng(decision_seed);
  const double base = 1.0 / candidates.size();
  for (int j : candidates.to_vector()) {
    const double noise = 0.01 * (2.0 * uniform01(rng) - 1.0);
    const double v = std::clamp(base + noise, 1e-6, 1.0 - 1e-6);
    s.outputs[static_cast<std::size_t>(j)] = v;
    s.inputs[static_cast<std::size_t>(j)] = std::log(v / (1.0 - v)) / params.gain;
  }
  return s;
}

double hopfield_energy(const HopfieldState& state, const FarParams& params) {
  double weighted = 0.0;
  double total = 0.0;
  for (int j = 0; j < state.size(); ++j) {
    const auto idx = static_cast<std::size_t>(j);
    weighted += state.costs[idx] * state.outputs[idx];
    total += state.outputs[idx];
  }
  return params.k1 * weighted * weighted + params.k2 * (total - 1.0) * (total - 1.0);
}

std::vector<double> hopfield_drive(const HopfieldState& state) {
  const int n = state.size();
  std::vector<double> drive(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    double acc = state.thresholds[static_cast<std::size_t>(j)];
    for (int k = 0; k < n; ++k) acc += state.weight(j, k) * state.outputs[static_cast<std::size_t>(k)];
    drive[static_cast<std::size_t>(j)] = acc;
  }
  return drive;
}

HopfieldResult hopfield_run(HopfieldState& state, const FarParams& params,
                            const HopfieldObserver& observer) {
  const std::vector<int> active = state.candidates.to_vector();
  const std::size_t n = state.costs.size();
  std::vector<double> drive(n, 0.0);

  int quiet_steps = 0;
  while (state.iterations < params.max_iters) {
    for (int j : active) {
      double acc = state.thresholds[static_cast<std::size_t>(j)];
      for (int k : active) acc += state.weight(j, k) * state.outputs[static_cast<std::size_t>(k)];
      drive[static_cast<std::size_t>(j)] = acc;
    }
    double max_change = 0.0;
    for (int j : active) {
      const auto idx = static_cast<std::size_t>(j);
      state.inputs[idx] += params.dt * drive[idx];
      const double v = sigmoid(params.gain * state.inputs[idx]);
      max_change = std::max(max_change, std::abs(v - state.outputs[idx]));
      state.outputs[idx] = v;
    }
    ++state.iterations;
    if (observer) observer(state);

    quiet_steps = max_change < params.conv_tol ? quiet_steps + 1 : 0;
    if (quiet_steps >= params.conv_steps) break;
  }

  HopfieldResult result;
  result.iterations = state.iterations;
  int best = -1;
  for (int j : active) {
    if (best < 0 || state.outputs[static_cast<std::size_t>(j)] >
                        state.outputs[static_cast<std::size_t>(best)]) {
      best = j;
    }
  }
  if (state.outputs[static_cast<std::size_t>(best)] >= params.winner_floor) result.winner = best;
  return result;
}

FarRoute far_route(NodeId source, NodeId dest, const FaultMap& faults, const FarParams& params,
                   int max_hops, DecisionMode mode, std::uint64_t seed) {
  const Hypercube& cube = faults.cube();
  cube.require_node(source);
  cube.require_node(dest);
  if (faults.is_faulty(source) || faults.is_faulty(dest)) {
    throw std::invalid_argument("FAR endpoints must be non-faulty");
  }
  if (max_hops < 1) throw std::invalid_argument("max_hops must be at least 1");

  FarRoute route;
  RoutingOutcome& out = route.outcome;
  out.path.push_back(source);
  NodeId current = source;
  while (true) {
    if (current == dest) {
      out.status = RouteStatus::Delivered;
      return route;
    }
    DimensionSet candidates;
    for (int j = 0; j < cube.dimension(); ++j) {
      if (!faults.is_faulty(flip(current, j))) candidates.insert(j);
    }
    if (candidates.empty()) {
      out.status = RouteStatus::Undeliverable;
      return route;
    }
    if (out.hops() >= max_hops) {
      out.status = RouteStatus::HopLimitExceeded;
      return route;
    }

    const std::vector<double> costs = far_costs(faults, current, dest, params);
    const int oracle = far_argmin(costs, candidates);
    HopTelemetry telemetry;
    int chosen = oracle;
    if (mode == DecisionMode::Hopfield) {
      const auto hop = static_cast<std::uint64_t>(out.hops());
      HopfieldState state = build_hopfield(costs, candidates, params, derive_seed(seed, hop));
      const HopfieldResult result = hopfield_run(state, params);
      telemetry.iterations = result.iterations;
      if (result.winner) {
        chosen = *result.winner;
        telemetry.disagreement = chosen != oracle;
      } else {
        telemetry.fallback = true;
      }
    }
    route.decisions.push_back(telemetry);
    current = flip(current, chosen);
    out.path.push_back(current);
  }
}

}  // namespace cuberoute
