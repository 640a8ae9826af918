#include "rwalk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rwalk/enumeration.hpp"
#include "rwalk/gof.hpp"
#include "rwalk/graph.hpp"
#include "rwalk/moments.hpp"
#include "rwalk/parallel.hpp"
#include "rwalk/recursive_tree.hpp"

namespace rwalk {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& key, const std::string& what) {
  throw std::invalid_argument("config key \"" + key + "\": " + what);
}

double get_real(const json& j, const std::string& key, bool required,
                double fallback = 0.0) {
  if (!j.contains(key)) {
    if (required) config_error(key, "missing");
    return fallback;
  }
  const auto& v = j.at(key);
  // Decimal strings are accepted so exact values like "0.5" can be spelled
  // out; strtod parses them to the nearest double, same as a JSON number.
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    char* end = nullptr;
    const double parsed = std::strtod(s.c_str(), &end);
    if (end == nullptr || *end != '\0' || s.empty()) {
      config_error(key, "not a decimal number: " + s);
    }
    return parsed;
  }
  if (!v.is_number()) config_error(key, "expected a number");
  return v.get<double>();
}

std::int64_t get_int(const json& j, const std::string& key, bool required,
                     std::int64_t fallback = 0) {
  if (!j.contains(key)) {
    if (required) config_error(key, "missing");
    return fallback;
  }
  const auto& v = j.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    config_error(key, "expected an integer");
  }
  return v.get<std::int64_t>();
}

std::string get_string(const json& j, const std::string& key, bool required,
                       const std::string& fallback = "") {
  if (!j.contains(key)) {
    if (required) config_error(key, "missing");
    return fallback;
  }
  if (!j.at(key).is_string()) config_error(key, "expected a string");
  return j.at(key).get<std::string>();
}

StepDistribution parse_distribution(const json& j) {
  if (!j.contains("distribution")) config_error("distribution", "missing");
  const auto& d = j.at("distribution");
  const std::string kind = get_string(d, "kind", true);
  if (kind == "rademacher") return StepDistribution::rademacher();
  if (kind == "centered-gaussian") {
    return StepDistribution::centered_gaussian(get_real(d, "sigma", true));
  }
  if (kind == "custom-discrete") {
    if (!d.contains("values") || !d.at("values").is_array()) {
      config_error("distribution.values", "expected an array");
    }
    if (!d.contains("probs") || !d.at("probs").is_array()) {
      config_error("distribution.probs", "expected an array");
    }
    std::vector<double> values;
    for (const auto& v : d.at("values")) values.push_back(v.get<double>());
    std::vector<double> probs;
    for (const auto& v : d.at("probs")) probs.push_back(v.get<double>());
    return StepDistribution::custom_discrete(std::move(values), std::move(probs));
  }
  config_error("distribution.kind", "unknown kind: " + kind);
}

ExperimentConfig parse_config(const std::string& command, const json& j) {
  ExperimentConfig c;
  c.command = command;
  if (j.contains("distribution")) c.dist = parse_distribution(j);
  const bool needs_dist = command == "simulate" || command == "constants" ||
                          command == "rate";
  if (needs_dist && !c.dist.has_value()) config_error("distribution", "missing");

  const bool needs_p = command != "percolation" && command != "verify";
  if (needs_p) {
    c.p = get_real(j, "p", true);
    if (!(c.p > 0.0 && c.p < 1.0)) config_error("p", "must lie in (0,1)");
  }
  if (j.contains("mode")) {
    const std::string mode = get_string(j, "mode", false, "positive");
    if (mode == "positive") {
      c.mode = WalkMode::kPositive;
    } else if (mode == "negative") {
      c.mode = WalkMode::kNegative;
    } else {
      config_error("mode", "expected \"positive\" or \"negative\"");
    }
  }
  c.n = get_int(j, "n", command == "simulate" || command == "moments" ||
                            command == "enumerate");
  if (j.contains("n_grid")) {
    if (!j.at("n_grid").is_array()) config_error("n_grid", "expected an array");
    for (const auto& v : j.at("n_grid")) c.n_grid.push_back(v.get<std::int64_t>());
  }
  if (command == "rate" && c.n_grid.empty()) config_error("n_grid", "missing");
  c.replicates = get_int(j, "replicates", command == "rate", 10000);
  c.seed = static_cast<std::uint64_t>(get_int(j, "seed", false, 0));
  c.alpha = get_real(j, "alpha", false, 0.05);
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) config_error("alpha", "must lie in (0,1)");
  if (command == "rate") c.target = get_string(j, "target", true);
  if (command == "percolation") {
    c.graph_path = get_string(j, "graph", false);
    c.graph_kind = get_string(j, "graph_kind", false);
    c.graph_n = get_int(j, "graph_n", false, 0);
    if (c.graph_path.empty() && c.graph_kind.empty()) {
      config_error("graph", "need either a graph file or graph_kind");
    }
    c.ptilde = get_real(j, "ptilde", true);
    if (!(c.ptilde > 0.0 && c.ptilde < 1.0)) {
      config_error("ptilde", "must lie in (0,1)");
    }
    c.d_max = static_cast<int>(get_int(j, "d_max", false, 8));
    if (j.contains("sigma2")) c.sigma2 = get_real(j, "sigma2", false);
  }
  c.out = get_string(j, "out", false);
  return c;
}

std::string timestamp_header(const std::string& command) {
  const std::time_t now = std::time(nullptr);
  char buf[64];
  std::tm tm_utc;
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return "# reinforced-walks " + command + " generated " + buf + "\n";
}

void run_constants(const ExperimentConfig& c, std::ostream& out) {
  const TheoryConstants tc = theory_constants(c.p, *c.dist);
  out << "key,value\n";
  const std::pair<const char*, double> rows[] = {
      {"p", tc.p},
      {"m1", tc.m1},
      {"m2", tc.m2},
      {"sigma0sq", tc.sigma0sq},
      {"checkb", tc.checkb},
      {"checksigmasq", tc.checksigmasq},
      {"sigma1sq", tc.sigma1sq},
      {"sigma2sq", tc.sigma2sq},
      {"sigma3sq", tc.sigma3sq},
      {"sigma4sq", tc.sigma4sq},
      {"residual_checksigma", tc.residual_checksigma()},
      {"residual_sigma1", tc.residual_sigma1()},
  };
  for (const auto& [key, value] : rows) {
    out << key << "," << format_real(value) << "\n";
  }
}

std::vector<std::int64_t> default_grid(std::int64_t n) {
  std::vector<std::int64_t> grid;
  for (std::int64_t base = 1; base <= n; base *= 10) {
    for (const std::int64_t mult : {1, 2, 5}) {
      const std::int64_t v = base * mult;
      if (v <= n) grid.push_back(v);
    }
  }
  if (grid.empty() || grid.back() != n) grid.push_back(n);
  return grid;
}

void run_moments(const ExperimentConfig& c, std::ostream& out) {
  if (c.n < 1) config_error("n", "must be >= 1");
  const auto grid = c.n_grid.empty() ? default_grid(c.n) : c.n_grid;
  const std::int64_t n_max = *std::max_element(grid.begin(), grid.end());
  const auto table = ez_table(2, n_max, c.p);
  out << "n,ez2,ez2_closed,bn,ratio\n";
  for (const std::int64_t n : grid) {
    const double ez2 = table[1][n - 1];
    const double closed = ez2_closed(n, c.p);
    double b = std::numeric_limits<double>::quiet_NaN();
    double ratio = std::numeric_limits<double>::quiet_NaN();
    if (c.p >= 0.5 && !(c.p == 0.5 && n < 2)) {
      b = bn(n, c.p);
      ratio = ez2 / b;
    }
    out << n << "," << format_real(ez2) << "," << format_real(closed) << ","
        << format_real(b) << "," << format_real(ratio) << "\n";
  }
}

void run_enumerate(const ExperimentConfig& c, std::ostream& out) {
  const auto oracle = enum_percolation(c.n, c.p);
  out << "quantity,index,value\n";
  for (std::int64_t k = 1; k <= c.n; ++k) {
    out << "mean_nu," << k << "," << format_real(oracle.mean_nu[k - 1]) << "\n";
  }
  for (std::int64_t k = 1; k <= c.n; ++k) {
    out << "var_nu," << k << "," << format_real(oracle.var_nu[k - 1]) << "\n";
  }
  for (int l = 0; l <= kEnumMaxLevel; ++l) {
    out << "mean_z," << l << "," << format_real(oracle.mean_z[l]) << "\n";
  }
  for (int l = 0; l <= kEnumMaxLevel; ++l) {
    out << "var_z," << l << "," << format_real(oracle.var_z[l]) << "\n";
  }
  out << "total_mass,," << format_real(oracle.total_mass) << "\n";
}

void run_simulate(const ExperimentConfig& c, std::ostream& out) {
  WalkParams params;
  params.p = c.p;
  params.mode = c.mode;
  params.n = c.n;
  params.seed = c.seed;
  const WalkTrace trace = simulate(params, *c.dist);
  out << "step,eps,choice,step_value,partial_sum\n";
  for (std::int64_t v = 0; v < trace.n(); ++v) {
    out << (v + 1) << "," << static_cast<int>(trace.eps[v]) << ",";
    if (v >= 1) out << (trace.choices[v] + 1);  // 1-based label
    out << "," << format_real(trace.steps[v]) << ","
        << format_real(trace.partial[v + 1]) << "\n";
  }
}

void run_rate(const ExperimentConfig& c, std::ostream& out) {
  RateExperimentConfig rc;
  rc.target = parse_rate_target(c.target);
  rc.dist = c.dist.value_or(StepDistribution::rademacher());
  rc.p = c.p;
  rc.n_grid = c.n_grid;
  rc.replicates = c.replicates;
  rc.seed = c.seed;
  rc.alpha = c.alpha;
  rc.threads = c.threads;
  const RateTable table = rate_experiment(rc);
  for (const auto& warning : table.warnings) {
    out << "# warning: " << warning << "\n";
  }
  out << "# conclusive," << (table.conclusive ? "true" : "false") << "\n";
  out << "n,N,dk,dkw,delta,ratio\n";
  for (const auto& row : table.rows) {
    out << row.n << "," << row.replicates << "," << format_real(row.dk) << ","
        << format_real(row.dkw) << "," << format_real(row.delta) << ","
        << format_real(row.ratio) << "\n";
  }
  if (table.has_fit) {
    out << "slope," << format_real(table.fit.slope) << ",stderr,"
        << format_real(table.fit.stderr_value) << "\n";
  }
}

void run_percolation(const ExperimentConfig& c, std::ostream& out) {
  Graph graph;
  if (!c.graph_path.empty()) {
    std::ifstream in(c.graph_path);
    if (!in) config_error("graph", "cannot open file: " + c.graph_path);
    graph = Graph::read_edge_list(in);
  } else if (c.graph_kind == "complete") {
    graph = Graph::complete(c.graph_n);
  } else if (c.graph_kind == "path") {
    graph = Graph::path(c.graph_n);
  } else {
    config_error("graph_kind", "expected \"complete\" or \"path\"");
  }
  const auto results = degree_count_experiment(graph, c.ptilde, c.d_max,
                                               c.replicates, c.seed, c.threads);
  out << "d,exact_mean,mc_mean,mc_var,stderr,be_bound,constant_free\n";
  for (const auto& r : results) {
    const double sigma2 = c.sigma2.value_or(r.mc_var);
    const double bound = sigma2 > 0.0
                             ? be_bound(graph, c.ptilde, sigma2)
                             : std::numeric_limits<double>::quiet_NaN();
    out << r.d << "," << format_real(r.exact_mean) << ","
        << format_real(r.mc_mean) << "," << format_real(r.mc_var) << ","
        << format_real(r.stderr_mean()) << "," << format_real(bound) << ",1\n";
  }
}

int run_verify(std::ostream& out) {
  const auto results = run_verify_suite();
  out << "check,status,detail\n";
  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    out << "\"" << r.name << "\"," << (r.pass ? "pass" : "fail") << ",\""
        << r.detail << "\"\n";
  }
  return all_pass ? 0 : 1;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ExperimentConfig parse_config_json(const std::string& command,
                                   const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  return parse_config(command, j);
}

ExperimentConfig parse_config_file(const std::string& command,
                                   const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_json(command, buffer.str());
}

int run_experiment(const ExperimentConfig& config, std::ostream& out) {
  out << timestamp_header(config.command);
  if (config.command == "constants") {
    run_constants(config, out);
  } else if (config.command == "moments") {
    run_moments(config, out);
  } else if (config.command == "enumerate") {
    run_enumerate(config, out);
  } else if (config.command == "simulate") {
    run_simulate(config, out);
  } else if (config.command == "rate") {
    run_rate(config, out);
  } else if (config.command == "percolation") {
    run_percolation(config, out);
  } else if (config.command == "verify") {
    return run_verify(out);
  } else {
    throw std::invalid_argument("unknown command: " + config.command);
  }
  return 0;
}

int run_cli(int argc, const char* const* argv) {
  const std::string usage =
      "usage: reinforced-walks <command> --config <path> [--out <path>] "
      "[--threads k]\n"
      "commands: simulate moments enumerate rate percolation constants verify";
  std::string command;
  std::string config_path;
  std::string out_path;
  int threads = 0;
  try {
    if (argc < 2) throw std::invalid_argument("missing command");
    command = argv[1];
    for (int i = 2; i < argc; ++i) {
      const std::string arg = argv[i];
      auto next = [&](const char* flag) -> std::string {
        if (i + 1 >= argc) {
          throw std::invalid_argument(std::string(flag) + " needs a value");
        }
        return argv[++i];
      };
      if (arg == "--config") {
        config_path = next("--config");
      } else if (arg == "--out") {
        out_path = next("--out");
      } else if (arg == "--threads") {
        threads = std::stoi(next("--threads"));
      } else {
        throw std::invalid_argument("unknown flag: " + arg);
      }
    }
    ExperimentConfig config;
    if (command == "verify" && config_path.empty()) {
      config.command = "verify";
    } else {
      if (config_path.empty()) throw std::invalid_argument("--config is required");
      config = parse_config_file(command, config_path);
    }
    config.threads = threads > 0 ? threads : default_thread_count();
    if (out_path.empty()) out_path = config.out;

    int status = 0;
    if (out_path.empty()) {
      status = run_experiment(config, std::cout);
    } else {
      std::ofstream out(out_path);
      if (!out) {
        throw std::invalid_argument("cannot open output file: " + out_path);
      }
      status = run_experiment(config, out);
    }
    return status;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n" << usage << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace rwalk
