#ifndef RWALK_WALK_HPP
#define RWALK_WALK_HPP

#include <cstdint>
#include <vector>

#include "rwalk/rng.hpp"
#include "rwalk/step_distribution.hpp"

namespace rwalk {

enum class WalkMode { kPositive, kNegative };

struct WalkParams {
  double p = 0.5;
  WalkMode mode = WalkMode::kPositive;
  std::int64_t n = 1;
  std::uint64_t seed = 0;
};

// One realized path.  All per-step arrays are 0-indexed (array slot v holds
// 1-based step v+1): eps[0] == 1 always, choices[v] is the uniform pick
// in {0..v-1} (drawn for every v >= 1, used only when eps[v] == 0),
// innovations holds the fresh draws X_1..X_{i(n)}, steps the realized walk
// increments, and partial the n+1 partial sums starting at 0.
struct WalkTrace {
  WalkMode mode = WalkMode::kPositive;
  std::vector<std::uint8_t> eps;
  std::vector<std::int32_t> choices;
  std::vector<double> innovations;
  std::vector<double> steps;
  std::vector<double> partial;
  std::int64_t innovation_count = 0;

  std::int64_t n() const { return static_cast<std::int64_t>(steps.size()); }
  double terminal() const { return partial.back(); }
};

// Unit-test injection: supply the full (eps, choices, innovations) tape.
// choices[0] is ignored; innovations must cover every eps[v] == 1.
struct InjectedRandomness {
  std::vector<std::uint8_t> eps;
  std::vector<std::int32_t> choices;
  std::vector<double> innovations;
};

// Horizon cap per trace.
constexpr std::int64_t kMaxTraceLength = 100000000;

WalkTrace simulate(WalkMode mode, const StepDistribution& dist, double p,
                   std::int64_t n, Rng& rng);
WalkTrace simulate(const WalkParams& params, const StepDistribution& dist);
WalkTrace simulate_positive(const StepDistribution& dist, double p,
                            std::int64_t n, Rng& rng);
WalkTrace simulate_negative(const StepDistribution& dist, double p,
                            std::int64_t n, Rng& rng);
WalkTrace simulate_injected(WalkMode mode, const InjectedRandomness& tape);

// Reusable buffer for the terminal-only simulation path.
struct WalkScratch {
  std::vector<double> steps;
};

// Terminal value S_n without building a trace; O(n) time, reuses scratch.
double simulate_terminal(WalkMode mode, const StepDistribution& dist, double p,
                         std::int64_t n, Rng& rng, WalkScratch& scratch);

// (S_n - m1 n)/(sigma0 sqrt(b_n)) in positive mode (requires p in [1/2,1)),
// (S_n - bcheck n)/(sigmacheck sqrt(n)) in negative mode.
double normalized_statistic(const WalkTrace& trace, const StepDistribution& dist,
                            double p);

// Recomputes the terminal sum through the percolation census of the trace's
// (eps, choices) and compares with the direct recursion: occupancy-weighted
// innovations in positive mode, Delta-weighted in negative mode.
bool representation_check(const WalkTrace& trace);

// Grows a uniform random recursive tree of size k and returns Delta(T).
std::int64_t sample_delta(std::int64_t k, Rng& rng);

}  // namespace rwalk

#endif  // RWALK_WALK_HPP
