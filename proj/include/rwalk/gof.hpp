#ifndef RWALK_GOF_HPP
#define RWALK_GOF_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rwalk/step_distribution.hpp"
#include "rwalk/walk.hpp"

namespace rwalk {

// Standard normal distribution function, erfc-based.
double normal_cdf(double x);

// Kolmogorov distance of a sample against N(mean, sd^2): sorts a copy and
// scans order statistics, max over i of max(i/N - Phi(x_(i)),
// Phi(x_(i)) - (i-1)/N).  Correct in the presence of ties.
double dk_sample(std::vector<double> sample, double mean, double sd);

// Dvoretzky-Kiefer-Wolfowitz half-width sqrt(ln(2/alpha) / (2N)).
double dkw_halfwidth(std::int64_t n, double alpha);

enum class RateTarget { kPositiveWalk, kNegativeWalk, kNu1, kMuTree };

RateTarget parse_rate_target(const std::string& name);
std::string rate_target_name(RateTarget target);

struct RatePoint {
  std::int64_t n = 0;
  std::int64_t replicates = 0;
  double dk = 0.0;
  double dkw = 0.0;
  double delta = 0.0;  // theoretical rate value at this n
  double ratio = 0.0;  // dk / delta
};

struct SlopeFit {
  double slope = 0.0;
  double stderr_value = 0.0;
  int points = 0;
};

struct RateTable {
  RateTarget target = RateTarget::kNu1;
  double p = 0.5;
  double alpha = 0.05;
  std::vector<RatePoint> rows;
  SlopeFit fit;           // filled when >= 3 rows with dk > 0
  bool has_fit = false;
  bool conclusive = true; // DKW width < delta(n_max)/3
  std::vector<std::string> warnings;
};

struct RateExperimentConfig {
  RateTarget target = RateTarget::kNu1;
  StepDistribution dist = StepDistribution::rademacher();
  double p = 0.5;
  std::vector<std::int64_t> n_grid;
  std::int64_t replicates = 1000;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  int threads = 1;
};

// Draws `replicates` normalized statistics per grid point, estimates the
// Kolmogorov distance against Phi, attaches the DKW width and the theorem
// rate, and fits the log-log slope.
RateTable rate_experiment(const RateExperimentConfig& config);

// Ordinary least squares of ln(dk) on ln(n); needs >= 3 rows, all dk > 0.
SlopeFit fit_slope(const RateTable& table);

}  // namespace rwalk

#endif  // RWALK_GOF_HPP
