#ifndef RWALK_ENUMERATION_HPP
#define RWALK_ENUMERATION_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "rwalk/step_distribution.hpp"
#include "rwalk/walk.hpp"

namespace rwalk {

// Exhaustive enumeration over all (U, eps) configurations at small n:
// every parent choice has weight 1/(n-1)!, every eps pattern weight
// p^{#ones-1} (1-p)^{#zeros}.  Ground truth for the recursion modules.

constexpr int kEnumMaxLevel = 6;

struct PercolationEnumeration {
  std::int64_t n = 0;
  double p = 0.5;
  std::vector<double> mean_nu;  // index k-1 holds E nu_k, k = 1..n
  std::vector<double> var_nu;
  std::vector<double> mean_z;  // index l holds E Z_l, l = 0..kEnumMaxLevel
  std::vector<double> var_z;
  std::vector<std::map<std::int64_t, double>> nu_pmf;  // [k-1]: count -> prob
  std::vector<std::map<std::int64_t, double>> z_pmf;   // [l]: value -> prob
  double total_mass = 0.0;  // must equal 1 within 1e-12
};

PercolationEnumeration enum_percolation(std::int64_t n, double p);

struct TreeFunctionalEnumeration {
  std::int64_t n = 0;
  double p = 0.5;
  double mean_mu = 0.0;
  double var_mu = 0.0;
  double mean_sigma2 = 0.0;
  std::vector<double> degree_power_sum;  // [l] = sum_i E D_{n,i}^l, l = 0..4
};

TreeFunctionalEnumeration enum_tree_functionals(std::int64_t n, double p);

// Exact law of Delta(T_k) over all (k-1)! recursive trees, held as integer
// tree counts so moment identities can be checked without rounding.
struct DeltaEnumeration {
  std::int64_t k = 0;
  std::int64_t tree_count = 0;
  std::map<std::int64_t, std::int64_t> counts;

  std::map<std::int64_t, double> pmf() const;
  // Exact integer sum of Delta^r over all trees.
  std::int64_t power_sum(int r) const;
  double moment(int r) const;
};

DeltaEnumeration enum_delta_pmf(std::int64_t k);

// Exact terminal-value law of the walk for a finite-support step law,
// aggregated over scaled-integer atom keys (value = key / scale), plus the
// exact Kolmogorov distance of the theorem-normalized law against Phi
// (NaN when the normalization is undefined for this mode/p/dist).
struct WalkPmf {
  std::int64_t n = 0;
  WalkMode mode = WalkMode::kPositive;
  double p = 0.5;
  std::int64_t scale = 1;
  std::map<std::int64_t, double> atoms;
  double total_mass = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  double dk = 0.0;
};

WalkPmf enum_walk_pmf(std::int64_t n, double p, const StepDistribution& dist,
                      WalkMode mode);

}  // namespace rwalk

#endif  // RWALK_ENUMERATION_HPP
