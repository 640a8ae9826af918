#include "rwalk/enumeration.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rwalk/gof.hpp"
#include "rwalk/moments.hpp"

namespace rwalk {

namespace {

std::int64_t factorial(std::int64_t n) {
  std::int64_t f = 1;
  for (std::int64_t k = 2; k <= n; ++k) f *= k;
  return f;
}

// Odometer over parent arrays: parent[v] runs through {0..v-1} for
// v = 2..n-1 (vertex 1 always attaches to the root).  Returns false once
// every configuration has been visited.
bool advance_parents(std::vector<std::int32_t>& parent) {
  const std::int64_t n = static_cast<std::int64_t>(parent.size());
  for (std::int64_t v = n - 1; v >= 2; --v) {
    if (++parent[v] < v) return true;
    parent[v] = 0;
  }
  return false;
}

struct EpsWeights {
  std::vector<double> pow_p;
  std::vector<double> pow_q;
  EpsWeights(std::int64_t n, double p) : pow_p(n + 1, 1.0), pow_q(n + 1, 1.0) {
    for (std::int64_t i = 1; i <= n; ++i) {
      pow_p[i] = pow_p[i - 1] * p;
      pow_q[i] = pow_q[i - 1] * (1.0 - p);
    }
  }
  // Weight of an eps pattern whose free bits (eps_2..eps_n) have `ones` ones.
  double operator()(int free_bits, int ones) const {
    return pow_p[ones] * pow_q[free_bits - ones];
  }
};

// Kahan-Neumaier compensated accumulator.
class KahanSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void check_enum_args(std::int64_t n, double p, std::int64_t cap,
                     const char* where) {
  if (n < 1) throw std::invalid_argument(std::string(where) + ": n must be >= 1");
  if (n > cap) {
    throw std::invalid_argument(std::string(where) +
                                ": n too large for exhaustive enumeration");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument(std::string(where) + ": p must lie in (0,1)");
  }
}

// Cluster pass shared by the enumerators: fills sizes (per cluster, opening
// order) and optionally deltas; mask bit v-1 is eps_{v+1} for v >= 1.
void config_clusters(const std::vector<std::int32_t>& parent, std::uint32_t mask,
                     std::vector<std::int32_t>& cluster_of,
                     std::vector<std::uint8_t>& parity,
                     std::vector<std::int32_t>& sizes,
                     std::vector<std::int64_t>* deltas) {
  const std::int64_t n = static_cast<std::int64_t>(parent.size());
  sizes.clear();
  if (deltas) deltas->clear();
  cluster_of[0] = 0;
  parity[0] = 0;
  sizes.push_back(1);
  if (deltas) deltas->push_back(1);
  for (std::int64_t v = 1; v < n; ++v) {
    if (mask & (1u << (v - 1))) {
      cluster_of[v] = static_cast<std::int32_t>(sizes.size());
      parity[v] = 0;
      sizes.push_back(1);
      if (deltas) deltas->push_back(1);
    } else {
      const std::int32_t c = cluster_of[parent[v]];
      cluster_of[v] = c;
      parity[v] = parity[parent[v]] ^ 1u;
      ++sizes[c];
      if (deltas) (*deltas)[c] += parity[v] ? -1 : 1;
    }
  }
}

}  // namespace

PercolationEnumeration enum_percolation(std::int64_t n, double p) {
  check_enum_args(n, p, 10, "enum_percolation");
  PercolationEnumeration out;
  out.n = n;
  out.p = p;
  out.mean_nu.assign(n, 0.0);
  out.var_nu.assign(n, 0.0);
  out.mean_z.assign(kEnumMaxLevel + 1, 0.0);
  out.var_z.assign(kEnumMaxLevel + 1, 0.0);
  out.nu_pmf.assign(n, {});
  out.z_pmf.assign(kEnumMaxLevel + 1, {});

  // k^l for cluster sizes k <= n, levels l <= 6.
  std::vector<std::array<std::int64_t, kEnumMaxLevel + 1>> power(n + 1);
  for (std::int64_t k = 0; k <= n; ++k) {
    power[k][0] = 1;
    for (int l = 1; l <= kEnumMaxLevel; ++l) power[k][l] = power[k][l - 1] * k;
  }

  // The eps weight depends only on the popcount of the free bits, so every
  // census statistic is tallied as an exact integer per popcount class and
  // the floating-point weights enter only in the final n-term combination.
  const int free_bits = static_cast<int>(n - 1);
  const int classes = free_bits + 1;
  const std::uint32_t mask_end = 1u << free_bits;

  std::vector<std::vector<std::int64_t>> sum_nu(
      classes, std::vector<std::int64_t>(n + 1, 0));
  std::vector<std::vector<std::int64_t>> sum_nu2(
      classes, std::vector<std::int64_t>(n + 1, 0));
  std::vector<std::vector<std::int64_t>> sum_z(
      classes, std::vector<std::int64_t>(kEnumMaxLevel + 1, 0));
  std::vector<std::vector<unsigned __int128>> sum_z2(
      classes, std::vector<unsigned __int128>(kEnumMaxLevel + 1, 0));
  std::vector<std::map<std::int64_t, std::vector<std::int64_t>>> nu_counts(n);
  std::vector<std::map<std::int64_t, std::vector<std::int64_t>>> z_counts(
      kEnumMaxLevel + 1);

  std::vector<std::int32_t> parent(n, 0);
  std::vector<std::int32_t> cluster_of(n);
  std::vector<std::uint8_t> parity(n);
  std::vector<std::int32_t> sizes;
  std::vector<std::int64_t> nu_count(n + 1);
  sizes.reserve(n);

  auto bump = [classes](std::map<std::int64_t, std::vector<std::int64_t>>& m,
                        std::int64_t value, int cls) {
    auto [it, inserted] = m.try_emplace(value);
    if (inserted) it->second.assign(classes, 0);
    ++it->second[cls];
  };

  do {
    for (std::uint32_t mask = 0; mask < mask_end; ++mask) {
      const int cls = std::popcount(mask);
      config_clusters(parent, mask, cluster_of, parity, sizes, nullptr);
      std::fill(nu_count.begin(), nu_count.end(), 0);
      std::array<std::int64_t, kEnumMaxLevel + 1> z{};
      for (const std::int32_t s : sizes) {
        ++nu_count[s];
        for (int l = 0; l <= kEnumMaxLevel; ++l) z[l] += power[s][l];
      }
      for (std::int64_t k = 1; k <= n; ++k) {
        sum_nu[cls][k] += nu_count[k];
        sum_nu2[cls][k] += nu_count[k] * nu_count[k];
        bump(nu_counts[k - 1], nu_count[k], cls);
      }
      for (int l = 0; l <= kEnumMaxLevel; ++l) {
        sum_z[cls][l] += z[l];
        sum_z2[cls][l] +=
            static_cast<unsigned __int128>(z[l]) * static_cast<unsigned __int128>(z[l]);
        bump(z_counts[l], z[l], cls);
      }
    }
  } while (advance_parents(parent));

  const double tree_weight = 1.0 / static_cast<double>(factorial(n - 1));
  const EpsWeights eps_weight(n, p);
  std::vector<double> class_weight(classes);
  std::int64_t config_total = 0;
  for (int cls = 0; cls < classes; ++cls) {
    class_weight[cls] = tree_weight * eps_weight(free_bits, cls);
  }
  for (const auto& [value, per_class] : z_counts[0]) {
    for (int cls = 0; cls < classes; ++cls) {
      out.total_mass += class_weight[cls] * static_cast<double>(per_class[cls]);
      config_total += per_class[cls];
    }
  }
  (void)config_total;

  for (std::int64_t k = 1; k <= n; ++k) {
    double mean = 0.0;
    double second = 0.0;
    for (int cls = 0; cls < classes; ++cls) {
      mean += class_weight[cls] * static_cast<double>(sum_nu[cls][k]);
      second += class_weight[cls] * static_cast<double>(sum_nu2[cls][k]);
    }
    out.mean_nu[k - 1] = mean;
    out.var_nu[k - 1] = second - mean * mean;
    for (const auto& [value, per_class] : nu_counts[k - 1]) {
      double mass = 0.0;
      for (int cls = 0; cls < classes; ++cls) {
        mass += class_weight[cls] * static_cast<double>(per_class[cls]);
      }
      out.nu_pmf[k - 1][value] = mass;
    }
  }
  for (int l = 0; l <= kEnumMaxLevel; ++l) {
    double mean = 0.0;
    double second = 0.0;
    for (int cls = 0; cls < classes; ++cls) {
      mean += class_weight[cls] * static_cast<double>(sum_z[cls][l]);
      second += class_weight[cls] * static_cast<double>(sum_z2[cls][l]);
    }
    out.mean_z[l] = mean;
    out.var_z[l] = second - mean * mean;
    for (const auto& [value, per_class] : z_counts[l]) {
      double mass = 0.0;
      for (int cls = 0; cls < classes; ++cls) {
        mass += class_weight[cls] * static_cast<double>(per_class[cls]);
      }
      out.z_pmf[l][value] = mass;
    }
  }
  return out;
}

TreeFunctionalEnumeration enum_tree_functionals(std::int64_t n, double p) {
  check_enum_args(n, p, 10, "enum_tree_functionals");
  TreeFunctionalEnumeration out;
  out.n = n;
  out.p = p;
  constexpr int kDegLevel = 4;
  out.degree_power_sum.assign(kDegLevel + 1, 0.0);

  std::vector<std::int32_t> parent(n, 0);
  std::vector<std::int32_t> deg(n);
  std::vector<double> pow_p(2 * n + 1);
  pow_p[0] = 1.0;
  for (std::size_t i = 1; i < pow_p.size(); ++i) pow_p[i] = pow_p[i - 1] * p;

  // Degree power sums are exact integers over trees; the tree functionals
  // use compensated accumulation across the (n-1)! terms.
  std::vector<std::int64_t> deg_sum(kDegLevel + 1, 0);
  KahanSum mu_sum;
  KahanSum mu_sq_sum;
  KahanSum sigma2_sum;
  do {
    std::fill(deg.begin(), deg.end(), 0);
    for (std::int64_t v = 1; v < n; ++v) {
      ++deg[v];
      ++deg[parent[v]];
    }
    double mu = 0.0;
    double s = 0.0;
    for (std::int64_t v = 0; v < n; ++v) {
      const double q = pow_p[deg[v]];
      mu += q;
      s += q - q * q;
      std::int64_t dl = 1;
      for (int l = 0; l <= kDegLevel; ++l) {
        deg_sum[l] += dl;
        dl *= deg[v];
      }
    }
    double edge_sum = 0.0;
    for (std::int64_t v = 1; v < n; ++v) {
      edge_sum += pow_p[deg[v] + deg[parent[v]] - 1];
    }
    const double sigma2 = s + 2.0 * (1.0 - p) * edge_sum;
    mu_sum.add(mu);
    mu_sq_sum.add(mu * mu);
    sigma2_sum.add(sigma2);
  } while (advance_parents(parent));

  const double tree_weight = 1.0 / static_cast<double>(factorial(n - 1));
  for (int l = 0; l <= kDegLevel; ++l) {
    out.degree_power_sum[l] = tree_weight * static_cast<double>(deg_sum[l]);
  }
  out.mean_mu = tree_weight * mu_sum.value();
  out.mean_sigma2 = tree_weight * sigma2_sum.value();
  out.var_mu = tree_weight * mu_sq_sum.value() - out.mean_mu * out.mean_mu;
  return out;
}

std::map<std::int64_t, double> DeltaEnumeration::pmf() const {
  std::map<std::int64_t, double> out;
  for (const auto& [d, c] : counts) {
    out[d] = static_cast<double>(c) / static_cast<double>(tree_count);
  }
  return out;
}

std::int64_t DeltaEnumeration::power_sum(int r) const {
  std::int64_t sum = 0;
  for (const auto& [d, c] : counts) {
    std::int64_t dr = 1;
    for (int i = 0; i < r; ++i) dr *= d;
    sum += dr * c;
  }
  return sum;
}

double DeltaEnumeration::moment(int r) const {
  return static_cast<double>(power_sum(r)) / static_cast<double>(tree_count);
}

DeltaEnumeration enum_delta_pmf(std::int64_t k) {
  if (k < 1 || k > 10) {
    throw std::invalid_argument("enum_delta_pmf: need 1 <= k <= 10");
  }
  DeltaEnumeration out;
  out.k = k;
  out.tree_count = factorial(k - 1);
  std::vector<std::int32_t> parent(k, 0);
  std::vector<std::uint8_t> parity(k);
  do {
    parity[0] = 0;
    std::int64_t delta = 1;
    for (std::int64_t v = 1; v < k; ++v) {
      parity[v] = parity[parent[v]] ^ 1u;
      delta += parity[v] ? -1 : 1;
    }
    ++out.counts[delta];
  } while (advance_parents(parent));
  return out;
}

namespace {

// Least q <= 10^6 such that every support value times q is an integer.
std::int64_t common_integer_scale(const std::vector<double>& values) {
  constexpr std::int64_t kMaxScale = 1000000;
  for (std::int64_t q = 1; q <= kMaxScale; ++q) {
    bool ok = true;
    for (const double v : values) {
      const double scaled = v * static_cast<double>(q);
      if (std::fabs(scaled - std::nearbyint(scaled)) >
          1e-9 * static_cast<double>(q)) {
        ok = false;
        break;
      }
    }
    if (ok) return q;
  }
  throw std::invalid_argument(
      "enum_walk_pmf: support is not rational with denominator <= 1e6");
}

}  // namespace

WalkPmf enum_walk_pmf(std::int64_t n, double p, const StepDistribution& dist,
                      WalkMode mode) {
  check_enum_args(n, p, 8, "enum_walk_pmf");
  if (!dist.finite_support()) {
    throw std::invalid_argument("enum_walk_pmf: needs a finite-support law");
  }
  const auto& values = dist.values();
  const auto& probs = dist.probs();
  const std::int64_t support = static_cast<std::int64_t>(values.size());
  const double state_estimate =
      static_cast<double>(factorial(n - 1)) * std::pow(2.0, n - 1) *
      static_cast<double>(support);
  if (state_estimate > 1e8) {
    throw std::invalid_argument("enum_walk_pmf: state-space cap exceeded");
  }

  WalkPmf out;
  out.n = n;
  out.mode = mode;
  out.p = p;
  out.scale = common_integer_scale(values);
  std::vector<std::int64_t> scaled(support);
  for (std::int64_t i = 0; i < support; ++i) {
    scaled[i] = std::llround(values[i] * static_cast<double>(out.scale));
  }

  const double tree_weight = 1.0 / static_cast<double>(factorial(n - 1));
  const EpsWeights eps_weight(n, p);
  const int free_bits = static_cast<int>(n - 1);
  const std::uint32_t mask_end = 1u << free_bits;

  std::vector<std::int32_t> parent(n, 0);
  std::vector<std::int32_t> cluster_of(n);
  std::vector<std::uint8_t> parity(n);
  std::vector<std::int32_t> sizes;
  std::vector<std::int64_t> deltas;
  std::map<std::int64_t, double> conv;
  std::map<std::int64_t, double> next;

  do {
    for (std::uint32_t mask = 0; mask < mask_end; ++mask) {
      const double w =
          tree_weight * eps_weight(free_bits, std::popcount(mask));
      config_clusters(parent, mask, cluster_of, parity, sizes, &deltas);
      // Conditional law of the terminal sum: convolution over innovations j
      // of the law of weight_j * X.
      conv.clear();
      conv[0] = 1.0;
      const std::size_t clusters = sizes.size();
      for (std::size_t j = 0; j < clusters; ++j) {
        const std::int64_t weight =
            (mode == WalkMode::kPositive) ? sizes[j] : deltas[j];
        if (weight == 0) continue;  // 0 * X contributes a unit atom at 0
        next.clear();
        for (const auto& [key, mass] : conv) {
          for (std::int64_t i = 0; i < support; ++i) {
            next[key + weight * scaled[i]] += mass * probs[i];
          }
        }
        conv.swap(next);
      }
      for (const auto& [key, mass] : conv) out.atoms[key] += w * mass;
    }
  } while (advance_parents(parent));

  double mean = 0.0;
  for (const auto& [key, mass] : out.atoms) {
    out.total_mass += mass;
    mean += mass * static_cast<double>(key);
  }
  mean /= static_cast<double>(out.scale);
  double var = 0.0;
  for (const auto& [key, mass] : out.atoms) {
    const double d = static_cast<double>(key) / static_cast<double>(out.scale) - mean;
    var += mass * d * d;
  }
  out.mean = mean;
  out.variance = var;

  // Exact sup-distance between the normalized discrete cdf and Phi,
  // evaluated from both sides of every atom.
  double center = 0.0;
  double spread = 0.0;
  bool normalizable = false;
  if (mode == WalkMode::kPositive) {
    if (p >= 0.5 && dist.sigma0sq() > 0.0 && !(p == 0.5 && n < 2)) {
      center = dist.m1() * static_cast<double>(n);
      spread = std::sqrt(dist.sigma0sq()) * std::sqrt(bn(n, p));
      normalizable = true;
    }
  } else {
    const TheoryConstants c = theory_constants(p, dist);
    if (c.checksigmasq > 0.0) {
      center = c.checkb * static_cast<double>(n);
      spread = std::sqrt(c.checksigmasq) * std::sqrt(static_cast<double>(n));
      normalizable = true;
    }
  }
  if (normalizable) {
    double dk = 0.0;
    double cdf = 0.0;
    for (const auto& [key, mass] : out.atoms) {
      const double z =
          (static_cast<double>(key) / static_cast<double>(out.scale) - center) /
          spread;
      const double phi = normal_cdf(z);
      dk = std::max(dk, phi - cdf);
      cdf += mass;
      dk = std::max(dk, cdf - phi);
    }
    out.dk = dk;
  } else {
    out.dk = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace rwalk
