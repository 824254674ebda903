// cuberoute: run fault-tolerant hypercube routing experiments and write a
// CSV or JSON table of per-case statistics.

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "cuberoute/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_seed;
  if (const char* s = std::getenv("CUBEROUTE_SEED")) env_seed = s;
  return cuberoute::cli::run_main(args, env_seed);
}
