#include "cuberoute/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace cuberoute::cli {

using nlohmann::json;

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ConfigError(key, "cannot parse '" + text + "' as a number");
  }
  return value;
}

template <typename T>
T number_value(const std::string& key, const json& v) {
  if (v.is_string()) return parse_number<T>(key, v.get<std::string>());
  if constexpr (std::is_floating_point_v<T>) {
    if (v.is_number()) return v.get<T>();
  } else {
    if (v.is_number_integer()) {
      if (std::is_unsigned_v<T> && v.get<std::int64_t>() < 0 && !v.is_number_unsigned()) {
        throw ConfigError(key, "must not be negative");
      }
      return v.get<T>();
    }
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::floor(d) == d) return static_cast<T>(d);
    }
  }
  throw ConfigError(key, "expected a " + std::string(std::is_floating_point_v<T> ? "number" : "whole number") +
                             ", got " + v.dump());
}

std::string string_value(const std::string& key, const json& v) {
  if (!v.is_string()) throw ConfigError(key, "expected a string, got " + v.dump());
  return v.get<std::string>();
}

// Accepts a JSON array, a single value, or a comma-separated string.
std::vector<std::string> list_items(const std::string& key, const json& v) {
  std::vector<std::string> items;
  if (v.is_array()) {
    for (const json& e : v) items.push_back(e.is_string() ? e.get<std::string>() : e.dump());
  } else if (v.is_string()) {
    std::stringstream ss(v.get<std::string>());
    for (std::string item; std::getline(ss, item, ',');) items.push_back(item);
  } else {
    items.push_back(v.dump());
  }
  if (items.empty()) throw ConfigError(key, "list must not be empty");
  return items;
}

double positive(const std::string& key, const json& v) {
  const double d = number_value<double>(key, v);
  if (!(d > 0) || !std::isfinite(d)) throw ConfigError(key, "must be a positive number");
  return d;
}

void apply_setting(ExperimentConfig& c, const std::string& key, const json& v) {
  if (key == "dimension") {
    c.dimensions.clear();
    for (const std::string& item : list_items(key, v)) {
      const int n = parse_number<int>(key, item);
      if (n < 1 || n > kMaxDimension) {
        throw ConfigError(key, "dimension " + item + " outside [1, " +
                                   std::to_string(kMaxDimension) + "]");
      }
      c.dimensions.push_back(n);
    }
  } else if (key == "faults") {
    c.fault_counts.clear();
    for (const std::string& item : list_items(key, v)) {
      const int k = parse_number<int>(key, item);
      if (k < 0) throw ConfigError(key, "fault count " + item + " is negative");
      c.fault_counts.push_back(k);
    }
  } else if (key == "router") {
    c.routers.clear();
    for (const std::string& item : list_items(key, v)) {
      if (item == "all") {
        c.routers = {RouterKind::Chiu, RouterKind::FarHopfield, RouterKind::FarArgmin};
        break;
      }
      const auto r = router_from_string(item);
      if (!r) throw ConfigError(key, "unknown router '" + item + "'");
      c.routers.push_back(*r);
    }
  } else if (key == "runs") {
    c.runs = number_value<int>(key, v);
    if (c.runs < 1) throw ConfigError(key, "must be at least 1");
  } else if (key == "seed") {
    c.seed = number_value<std::uint64_t>(key, v);
  } else if (key == "rule") {
    const std::string s = string_value(key, v);
    if (s == "chiu") {
      c.rule = UnsafeRule::Chiu;
    } else if (s == "lee") {
      c.rule = UnsafeRule::Lee;
    } else {
      throw ConfigError(key, "unknown rule '" + s + "'");
    }
  } else if (key == "max_hops") {
    c.max_hops = number_value<int>(key, v);
    if (*c.max_hops < 1) throw ConfigError(key, "must be at least 1");
  } else if (key == "threads") {
    c.threads = number_value<int>(key, v);
    if (c.threads < 1) throw ConfigError(key, "must be at least 1");
  } else if (key == "epsilon") {
    c.params.epsilon = positive(key, v);
  } else if (key == "k1") {
    c.params.k1 = positive(key, v);
  } else if (key == "k2") {
    c.params.k2 = positive(key, v);
  } else if (key == "k3") {
    c.params.k3 = positive(key, v);
  } else if (key == "k4") {
    c.params.k4 = positive(key, v);
  } else if (key == "dt") {
    c.params.dt = positive(key, v);
  } else if (key == "gain") {
    c.params.gain = positive(key, v);
  } else if (key == "conv_tol") {
    c.params.conv_tol = positive(key, v);
  } else if (key == "conv_steps") {
    c.params.conv_steps = number_value<int>(key, v);
    if (c.params.conv_steps < 1) throw ConfigError(key, "must be at least 1");
  } else if (key == "max_iters") {
    c.params.max_iters = number_value<int>(key, v);
    if (c.params.max_iters < 1) throw ConfigError(key, "must be at least 1");
  } else if (key == "winner_floor") {
    const double f = number_value<double>(key, v);
    if (!(f > 0 && f < 1)) throw ConfigError(key, "must lie strictly between 0 and 1");
    c.params.winner_floor = f;
  } else if (key == "zero_diagonal") {
    if (v.is_boolean()) {
      c.params.zero_diagonal = v.get<bool>();
    } else if (v == "true" || v == "false") {
      c.params.zero_diagonal = v == "true";
    } else {
      throw ConfigError(key, "expected true or false");
    }
  } else if (key == "format") {
    const std::string s = string_value(key, v);
    if (s == "csv") {
      c.format = OutputFormat::Csv;
    } else if (s == "json") {
      c.format = OutputFormat::Json;
    } else {
      throw ConfigError(key, "unknown format '" + s + "'");
    }
  } else if (key == "out") {
    c.out_path = string_value(key, v);
  } else {
    throw ConfigError(key, "unknown setting");
  }
}

void validate_cases(const ExperimentConfig& c) {
  for (const CaseSpec& spec : c.cases()) {
    const auto capacity = (std::int64_t{1} << spec.dimension) - 2;
    if (spec.fault_count > capacity) {
      throw ConfigError("faults", std::to_string(spec.fault_count) + " faults leave no room for two endpoints in a " +
                                      std::to_string(spec.dimension) + "-cube");
    }
  }
}

std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

// Every float column, rendered once and shared by both formats.
struct Row {
  std::optional<std::string> mpl, fault_free_mpl, pl_over_mpl, mean_iterations;
  std::optional<std::int64_t> max_iterations, fallbacks;
};

Row make_row(const CaseStats& s) {
  auto finite = [](double v) -> std::optional<std::string> {
    if (!std::isfinite(v)) return std::nullopt;
    return format_fixed(v);
  };
  Row row;
  row.mpl = finite(s.mpl());
  row.fault_free_mpl = finite(s.fault_free_mpl());
  row.pl_over_mpl = finite(s.pl_over_mpl());
  if (s.uses_hopfield()) {
    if (auto m = s.mean_iterations()) row.mean_iterations = format_fixed(*m);
    row.max_iterations = s.max_iterations;
    row.fallbacks = s.fallbacks;
  }
  return row;
}

}  // namespace

std::vector<CaseSpec> ExperimentConfig::cases() const {
  std::vector<CaseSpec> out;
  for (int n : dimensions) {
    for (int k : fault_counts) {
      for (RouterKind r : routers) {
        CaseSpec spec;
        spec.dimension = n;
        spec.fault_count = k;
        spec.runs = runs;
        spec.seed = seed;
        spec.router = r;
        spec.params = params;
        spec.rule = rule;
        spec.max_hops = max_hops;
        out.push_back(spec);
      }
    }
  }
  return out;
}

void apply_config_json(ExperimentConfig& config, const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config", "top level must be an object");
  for (const auto& [key, value] : doc.items()) apply_setting(config, key, value);
}

std::optional<ExperimentConfig> parse_config(std::span<const std::string> args,
                                             std::optional<std::string> env_seed) {
  CLI::App app{"Fault-tolerant hypercube routing experiments"};
  app.set_help_flag("-h,--help", "Print this help message and exit");

  std::string config_path;
  app.add_option("--config", config_path, "Flat JSON file of settings");

  struct Flag {
    const char* name;
    const char* key;
    const char* help;
  };
  // Values are validated by apply_setting.
  const Flag flags[] = {
      {"--dimension", "dimension", "Cube dimension(s), comma separated"},
      {"--faults", "faults", "Fault count(s), comma separated"},
      {"--runs", "runs", "Runs per case"},
      {"--seed", "seed", "Master seed (fallback: CUBEROUTE_SEED)"},
      {"--router", "router", "chiu|far|far-argmin|all, comma separated"},
      {"--rule", "rule", "Unsafe-node rule: chiu|lee"},
      {"--max-hops", "max_hops", "Hop limit (default 4n)"},
      {"--epsilon", "epsilon", "Proximity offset"},
      {"--k1", "k1", "Cost-term energy weight"},
      {"--k2", "k2", "One-hot energy weight"},
      {"--k3", "k3", "Distance weight in the cost"},
      {"--k4", "k4", "Fault proximity weight in the cost"},
      {"--dt", "dt", "Euler step"},
      {"--gain", "gain", "Sigmoid gain"},
      {"--conv-tol", "conv_tol", "Output change treated as settled"},
      {"--conv-steps", "conv_steps", "Settled steps needed to stop"},
      {"--max-iters", "max_iters", "Iteration cap per decision"},
      {"--winner-floor", "winner_floor", "Minimum winning output"},
      {"--zero-diagonal", "zero_diagonal", "true to drop self-connections"},
      {"--format", "format", "csv|json"},
      {"--out", "out", "Output file (default stdout)"},
      {"--threads", "threads", "Worker threads"},
  };
  std::vector<std::string> values(std::size(flags));
  std::vector<CLI::Option*> options;
  for (std::size_t i = 0; i < std::size(flags); ++i) {
    options.push_back(app.add_option(flags[i].name, values[i], flags[i].help));
  }

  std::vector<const char*> argv{"cuberoute"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError("", e.what());
  }

  ExperimentConfig config;
  bool seed_given = false;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("config", "cannot read '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    apply_config_json(config, buf.str());
    seed_given = json::parse(buf.str()).contains("seed");
  }
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (options[i]->count() == 0) continue;
    apply_setting(config, flags[i].key, json(values[i]));
    if (std::string_view(flags[i].key) == "seed") seed_given = true;
  }
  if (!seed_given && env_seed && !env_seed->empty()) {
    apply_setting(config, "seed", json(*env_seed));
  }
  validate_cases(config);
  return config;
}

std::string render_csv(std::span<const CaseStats> stats) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  auto opt = [](const auto& v) {
    if (!v) return std::string();
    if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, std::string>) {
      return *v;
    } else {
      return std::to_string(*v);
    }
  };
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const CaseStats& s = stats[i];
    const Row row = make_row(s);
    os << i << ',' << s.dimension << ',' << s.fault_count << ',' << to_string(s.router) << ','
       << s.runs << ',' << s.seed << ',' << s.delivered << ',' << s.undeliverable << ','
       << s.hop_limit << ',' << s.unreachable << ',' << opt(row.mpl) << ','
       << opt(row.fault_free_mpl) << ',' << opt(row.pl_over_mpl) << ','
       << opt(row.mean_iterations) << ',' << opt(row.max_iterations) << ','
       << opt(row.fallbacks) << '\n';
  }
  return os.str();
}

std::string render_json(std::span<const CaseStats> stats) {
  auto number = [](const std::optional<std::string>& v) -> nlohmann::ordered_json {
    if (!v) return nullptr;
    return std::stod(*v);
  };
  auto integer = [](const std::optional<std::int64_t>& v) -> nlohmann::ordered_json {
    if (!v) return nullptr;
    return *v;
  };
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const CaseStats& s = stats[i];
    const Row row = make_row(s);
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    o["case"] = i;
    o["dimension"] = s.dimension;
    o["fault_count"] = s.fault_count;
    o["router"] = std::string(to_string(s.router));
    o["runs"] = s.runs;
    o["seed"] = s.seed;
    o["delivered"] = s.delivered;
    o["undeliverable"] = s.undeliverable;
    o["hop_limit"] = s.hop_limit;
    o["unreachable"] = s.unreachable;
    o["mpl"] = number(row.mpl);
    o["fault_free_mpl"] = number(row.fault_free_mpl);
    o["pl_over_mpl"] = number(row.pl_over_mpl);
    o["mean_iterations"] = number(row.mean_iterations);
    o["max_iterations"] = integer(row.max_iterations);
    o["fallbacks"] = integer(row.fallbacks);
    rows.push_back(std::move(o));
  }
  return rows.dump(2) + "\n";
}

void emit_results(std::span<const CaseStats> stats, OutputFormat format, const std::string& path) {
  if (stats.empty()) throw std::invalid_argument("no results to emit");
  const std::string text = format == OutputFormat::Csv ? render_csv(stats) : render_json(stats);
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

int run_main(std::span<const std::string> args, std::optional<std::string> env_seed) {
  try {
    const std::optional<ExperimentConfig> config = parse_config(args, std::move(env_seed));
    if (!config) return 0;
    const std::vector<CaseSpec> specs = config->cases();
    const std::vector<CaseStats> stats = sweep(specs, config->threads);
    emit_results(stats, config->format, config->out_path);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cuberoute::cli
