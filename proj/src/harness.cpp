#include "cuberoute/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "cuberoute/chiu.hpp"
#include "cuberoute/random.hpp"
#include "cuberoute/routing.hpp"

namespace cuberoute {

std::string_view to_string(RouterKind router) {
  switch (router) {
    case RouterKind::Chiu: return "chiu";
    case RouterKind::FarHopfield: return "far";
    case RouterKind::FarArgmin: return "far-argmin";
  }
  return "?";
}

std::optional<RouterKind> router_from_string(std::string_view name) {
  if (name == "chiu") return RouterKind::Chiu;
  if (name == "far") return RouterKind::FarHopfield;
  if (name == "far-argmin") return RouterKind::FarArgmin;
  return std::nullopt;
}

void CaseSpec::validate() const {
  const Hypercube cube(dimension);
  if (runs < 1) throw std::invalid_argument("runs must be at least 1");
  if (fault_count < 0 || static_cast<std::int64_t>(fault_count) >
                             static_cast<std::int64_t>(cube.node_count()) - 2) {
    throw std::invalid_argument("fault count " + std::to_string(fault_count) +
                                " leaves no room for two endpoints in a " +
                                std::to_string(dimension) + "-cube");
  }
  if (effective_max_hops() < 1) throw std::invalid_argument("max_hops must be at least 1");
  params.validate();
}

double CaseStats::mpl() const {
  if (delivered == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(hop_sum) / static_cast<double>(delivered);
}

double CaseStats::fault_free_mpl() const {
  return static_cast<double>(distance_sum) / static_cast<double>(runs);
}

double CaseStats::pl_over_mpl() const { return mpl() / fault_free_mpl(); }

std::optional<double> CaseStats::mean_iterations() const {
  if (!uses_hopfield() || decisions == 0) return std::nullopt;
  return static_cast<double>(iteration_sum) / static_cast<double>(decisions);
}

void CaseStats::merge(const CaseStats& o) {
  runs += o.runs;
  delivered += o.delivered;
  undeliverable += o.undeliverable;
  hop_limit += o.hop_limit;
  unreachable += o.unreachable;
  algorithmic_failures += o.algorithmic_failures;
  path_violations += o.path_violations;
  shorter_than_bfs += o.shorter_than_bfs;
  hop_sum += o.hop_sum;
  distance_sum += o.distance_sum;
  optimal_sum += o.optimal_sum;
  decisions += o.decisions;
  iteration_sum += o.iteration_sum;
  max_iterations = std::max(max_iterations, o.max_iterations);
  fallbacks += o.fallbacks;
  disagreements += o.disagreements;
}

std::optional<int> bfs_shortest(const FaultMap& faults, NodeId source, NodeId dest) {
  const Hypercube& cube = faults.cube();
  cube.require_node(source);
  cube.require_node(dest);
  if (faults.is_faulty(source) || faults.is_faulty(dest)) {
    throw std::invalid_argument("BFS endpoints must be non-faulty");
  }
  if (source == dest) return 0;

  std::vector<int> dist(cube.node_count(), -1);
  std::vector<NodeId> frontier{source};
  dist[source.value] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const NodeId x = frontier[head];
    for (int j = 0; j < cube.dimension(); ++j) {
      const NodeId y = flip(x, j);
      if (dist[y.value] >= 0 || faults.is_faulty(y)) continue;
      dist[y.value] = dist[x.value] + 1;
      if (y == dest) return dist[y.value];
      frontier.push_back(y);
    }
  }
  return std::nullopt;
}

namespace {

NodeId draw_non_faulty(const FaultMap& faults, Rng& rng, std::optional<NodeId> other) {
  while (true) {
    const NodeId x(static_cast<std::uint32_t>(uniform_below(rng, faults.node_count())));
    if (!faults.is_faulty(x) && x != other) return x;
  }
}

CaseStats empty_stats(const CaseSpec& spec) {
  CaseStats s;
  s.dimension = spec.dimension;
  s.fault_count = spec.fault_count;
  s.router = spec.router;
  s.seed = spec.seed;
  return s;
}

}  // namespace

CaseStats run_case_range(const CaseSpec& spec, int first_run, int last_run) {
  const Hypercube cube(spec.dimension);
  const int max_hops = spec.effective_max_hops();
  CaseStats stats = empty_stats(spec);

  for (int r = first_run; r < last_run; ++r) {
    const std::uint64_t run_seed = derive_seed(spec.seed, static_cast<std::uint64_t>(r));
    Rng rng(run_seed);
    const FaultMap faults = random_fault_map(cube, spec.fault_count, rng);
    const NodeId source = draw_non_faulty(faults, rng, std::nullopt);
    const NodeId dest = draw_non_faulty(faults, rng, source);

    RoutingOutcome outcome;
    switch (spec.router) {
      case RouterKind::Chiu:
        outcome = chiu_route(source, dest, classify(faults, spec.rule), max_hops);
        break;
      case RouterKind::FarHopfield:
      case RouterKind::FarArgmin: {
        const auto mode = spec.router == RouterKind::FarHopfield ? DecisionMode::Hopfield
                                                                 : DecisionMode::ArgminOracle;
        FarRoute route = far_route(source, dest, faults, spec.params, max_hops, mode,
                                   derive_seed(run_seed, 0x4641'5200ULL));
        if (mode == DecisionMode::Hopfield) {
          for (const HopTelemetry& t : route.decisions) {
            ++stats.decisions;
            stats.iteration_sum += t.iterations;
            stats.max_iterations = std::max<std::int64_t>(stats.max_iterations, t.iterations);
            stats.fallbacks += t.fallback ? 1 : 0;
            stats.disagreements += t.disagreement ? 1 : 0;
          }
        }
        outcome = std::move(route.outcome);
        break;
      }
    }

    ++stats.runs;
    stats.distance_sum += hamming(source, dest);
    const std::optional<int> shortest = bfs_shortest(faults, source, dest);
    if (!shortest) ++stats.unreachable;

    switch (outcome.status) {
      case RouteStatus::Delivered:
        if (audit_path(faults, source, dest, outcome)) ++stats.path_violations;
        // A delivered route implies reachability, so `shortest` is set.
        if (!shortest || outcome.hops() < *shortest) ++stats.shorter_than_bfs;
        ++stats.delivered;
        stats.hop_sum += outcome.hops();
        stats.optimal_sum += shortest.value_or(0);
        break;
      case RouteStatus::Undeliverable:
        ++stats.undeliverable;
        break;
      case RouteStatus::HopLimitExceeded:
        ++stats.hop_limit;
        break;
    }
    if (outcome.status != RouteStatus::Delivered && shortest) ++stats.algorithmic_failures;
  }
  return stats;
}

CaseStats run_case(const CaseSpec& spec, int threads) {
  spec.validate();
  threads = std::clamp(threads, 1, spec.runs);
  if (threads == 1) return run_case_range(spec, 0, spec.runs);

  std::vector<CaseStats> parts(static_cast<std::size_t>(threads));
  std::vector<std::exception_ptr> errors(parts.size());
  {
    std::vector<std::jthread> workers;
    for (int w = 0; w < threads; ++w) {
      const int first = static_cast<int>(static_cast<std::int64_t>(spec.runs) * w / threads);
      const int last = static_cast<int>(static_cast<std::int64_t>(spec.runs) * (w + 1) / threads);
      workers.emplace_back([&, w, first, last] {
        try {
          parts[static_cast<std::size_t>(w)] = run_case_range(spec, first, last);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  CaseStats total = empty_stats(spec);
  for (const CaseStats& p : parts) total.merge(p);
  return total;
}

std::vector<CaseStats> sweep(std::span<const CaseSpec> specs, int threads) {
  if (specs.empty()) throw std::invalid_argument("sweep needs at least one case");
  std::vector<CaseStats> results(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());

  auto run_one = [&](std::size_t i) {
    try {
      results[i] = run_case(specs[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const auto workers_wanted = static_cast<std::size_t>(std::max(threads, 1));
  if (workers_wanted == 1 || specs.size() == 1) {
    for (std::size_t i = 0; i < specs.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < std::min(workers_wanted, specs.size()); ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) run_one(i);
      });
    }
  }

  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw SweepError(i, e.what());
    }
  }
  return results;
}

}  // namespace cuberoute
