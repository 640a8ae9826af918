#ifndef RWALK_CLI_HPP
#define RWALK_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rwalk/step_distribution.hpp"
#include "rwalk/walk.hpp"

namespace rwalk {

// Parsed experiment configuration (one JSON document per run).
struct ExperimentConfig {
  std::string command;
  std::optional<StepDistribution> dist;
  double p = 0.5;
  WalkMode mode = WalkMode::kPositive;
  std::int64_t n = 0;
  std::vector<std::int64_t> n_grid;
  std::int64_t replicates = 0;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  std::string target;      // rate command
  std::string graph_path;  // percolation command: edge-list file
  std::string graph_kind;  // or a generated graph: "complete" | "path"
  std::int64_t graph_n = 0;
  double ptilde = 0.5;
  int d_max = 8;
  std::optional<double> sigma2;  // percolation: exact variance when known
  std::string out;
  int threads = 1;
};

// Throws std::invalid_argument naming the offending key on bad input.
ExperimentConfig parse_config_file(const std::string& command,
                                   const std::string& path);
ExperimentConfig parse_config_json(const std::string& command,
                                   const std::string& json_text);

// Runs one experiment, writing the CSV artifact to `out`.  Returns the
// process exit status: 0 success, 1 check failure (verify only).
int run_experiment(const ExperimentConfig& config, std::ostream& out);

// Full command-line entry point; maps usage/config errors to exit code 2.
int run_cli(int argc, const char* const* argv);

// 17-significant-digit formatting used by every CSV artifact.
std::string format_real(double v);

// The cross-oracle verification suite behind `reinforced-walks verify`.
struct VerifyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<VerifyResult> run_verify_suite();

}  // namespace rwalk

#endif  // RWALK_CLI_HPP
