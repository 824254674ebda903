#pragma once

// Experiment configuration and result tables for the command-line front end.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuberoute/far.hpp"
#include "cuberoute/harness.hpp"
#include "cuberoute/safety.hpp"

namespace cuberoute::cli {

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
  std::vector<int> dimensions{4};
  std::vector<int> fault_counts{0, 1, 2, 3, 4, 5, 6, 7};
  std::vector<RouterKind> routers{RouterKind::Chiu, RouterKind::FarHopfield};
  int runs = 1000;
  std::uint64_t seed = 1;
  FarParams params;
  UnsafeRule rule = UnsafeRule::Chiu;
  std::optional<int> max_hops;
  OutputFormat format = OutputFormat::Csv;
  std::string out_path;  // empty or "-" means stdout
  int threads = 1;

  /// Cartesian product in dimension, fault count, router order. Every case
  /// shares the seed, so routers compare on identical fault maps and endpoints.
  std::vector<CaseSpec> cases() const;
};

/// Bad configuration input; `key()` names the offending setting.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses command-line arguments (without the program name). Precedence is
/// flag, then `--config` file, then `env_seed` for the seed, then defaults.
/// Returns std::nullopt when help was requested and printed.
std::optional<ExperimentConfig> parse_config(std::span<const std::string> args,
                                             std::optional<std::string> env_seed = {});

/// Applies a flat JSON object of settings on top of `config`; unknown keys are
/// rejected.
void apply_config_json(ExperimentConfig& config, const std::string& json_text);

inline constexpr const char* kCsvHeader =
    "case,dimension,fault_count,router,runs,seed,delivered,undeliverable,hop_limit,"
    "unreachable,mpl,fault_free_mpl,pl_over_mpl,mean_iterations,max_iterations,fallbacks";

std::string render_csv(std::span<const CaseStats> stats);
std::string render_json(std::span<const CaseStats> stats);

/// Writes the rendered table to `path` (stdout for "" or "-"). Throws IoError.
void emit_results(std::span<const CaseStats> stats, OutputFormat format, const std::string& path);

/// Full program: parse, run the sweep, emit. Returns the process exit code
/// (0 success, 2 configuration error, 3 I/O error, 1 anything else).
int run_main(std::span<const std::string> args, std::optional<std::string> env_seed);

}  // namespace cuberoute::cli
