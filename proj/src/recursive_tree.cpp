#include "rwalk/recursive_tree.hpp"

#include <cmath>
#include <stdexcept>

namespace rwalk {

RecursiveTree RecursiveTree::from_parents(std::vector<std::int32_t> parents) {
  RecursiveTree t;
  t.n = static_cast<std::int64_t>(parents.size());
  if (t.n <= 0) throw std::invalid_argument("tree: size must be >= 1");
  if (parents[0] != 0) throw std::invalid_argument("tree: parent[0] must be 0");
  for (std::int64_t v = 1; v < t.n; ++v) {
    if (parents[v] < 0 || parents[v] >= v) {
      throw std::invalid_argument("tree: parent[v] must lie in {0..v-1}");
    }
  }
  t.parent = std::move(parents);
  return t;
}

RecursiveTree grow_tree(std::int64_t n, Rng& rng) {
  if (n <= 0) throw std::invalid_argument("grow_tree: n must be >= 1");
  RecursiveTree t;
  t.n = n;
  t.parent.resize(n);
  t.parent[0] = 0;
  for (std::int64_t v = 1; v < n; ++v) {
    t.parent[v] = static_cast<std::int32_t>(rng.below(v));
  }
  return t;
}

ClusterStats percolate(const RecursiveTree& tree,
                       const std::vector<std::uint8_t>& eps) {
  const std::int64_t n = tree.n;
  if (static_cast<std::int64_t>(eps.size()) != n) {
    throw std::invalid_argument("percolate: eps length must equal tree size");
  }
  if (eps[0] != 1) throw std::invalid_argument("percolate: eps[0] must be 1");
  ClusterStats s;
  s.n = n;
  s.cluster_of.resize(n);
  for (std::int64_t v = 0; v < n; ++v) {
    if (eps[v]) {
      s.cluster_of[v] = static_cast<std::int32_t>(s.cluster_sizes.size());
      s.cluster_sizes.push_back(1);
    } else {
      const std::int32_t c = s.cluster_of[tree.parent[v]];
      s.cluster_of[v] = c;
      ++s.cluster_sizes[c];
    }
  }
  for (std::int32_t k : s.cluster_sizes) ++s.nu[k];
  return s;
}

double z_stat(const ClusterStats& stats, double l) {
  const double li = std::nearbyint(l);
  const bool integral = (li == l) && l >= 0.0 && l <= 62.0;
  double sum = 0.0;
  for (const auto& [k, count] : stats.nu) {
    double kl;
    if (integral) {
      kl = 1.0;
      for (int r = 0; r < static_cast<int>(li); ++r) kl *= k;
    } else {
      kl = std::pow(static_cast<double>(k), l);
    }
    sum += kl * static_cast<double>(count);
  }
  return sum;
}

double conditional_variance(const ClusterStats& stats, double sigma0sq) {
  if (sigma0sq < 0.0) {
    throw std::invalid_argument("conditional_variance: sigma0sq must be >= 0");
  }
  return sigma0sq * z_stat(stats, 2.0);
}

std::int64_t delta_tree(const RecursiveTree& tree) {
  std::vector<std::uint8_t> parity(tree.n);
  parity[0] = 0;
  std::int64_t delta = 1;
  for (std::int64_t v = 1; v < tree.n; ++v) {
    parity[v] = parity[tree.parent[v]] ^ 1u;
    delta += parity[v] ? -1 : 1;
  }
  return delta;
}

std::vector<std::int64_t> cluster_deltas(const RecursiveTree& tree,
                                         const std::vector<std::uint8_t>& eps) {
  const std::int64_t n = tree.n;
  if (static_cast<std::int64_t>(eps.size()) != n || eps[0] != 1) {
    throw std::invalid_argument("cluster_deltas: bad eps");
  }
  std::vector<std::int64_t> deltas;
  std::vector<std::int32_t> cluster_of(n);
  std::vector<std::uint8_t> parity(n);
  for (std::int64_t v = 0; v < n; ++v) {
    if (eps[v]) {
      cluster_of[v] = static_cast<std::int32_t>(deltas.size());
      parity[v] = 0;
      deltas.push_back(1);
    } else {
      const std::int32_t u = tree.parent[v];
      cluster_of[v] = cluster_of[u];
      parity[v] = parity[u] ^ 1u;
      deltas[cluster_of[v]] += parity[v] ? -1 : 1;
    }
  }
  return deltas;
}

std::vector<RecursiveTree> cluster_subtrees(const RecursiveTree& tree,
                                            const std::vector<std::uint8_t>& eps) {
  const std::int64_t n = tree.n;
  if (static_cast<std::int64_t>(eps.size()) != n || eps[0] != 1) {
    throw std::invalid_argument("cluster_subtrees: bad eps");
  }
  std::vector<RecursiveTree> subtrees;
  std::vector<std::int32_t> cluster_of(n);
  std::vector<std::int32_t> local_label(n);
  for (std::int64_t v = 0; v < n; ++v) {
    if (eps[v]) {
      cluster_of[v] = static_cast<std::int32_t>(subtrees.size());
      local_label[v] = 0;
      RecursiveTree t;
      t.n = 1;
      t.parent = {0};
      subtrees.push_back(std::move(t));
    } else {
      const std::int32_t u = tree.parent[v];
      const std::int32_t c = cluster_of[u];
      cluster_of[v] = c;
      RecursiveTree& t = subtrees[c];
      local_label[v] = static_cast<std::int32_t>(t.n);
      t.parent.push_back(local_label[u]);
      ++t.n;
    }
  }
  return subtrees;
}

std::vector<std::int32_t> degrees(const RecursiveTree& tree) {
  std::vector<std::int32_t> deg(tree.n, 0);
  for (std::int64_t v = 1; v < tree.n; ++v) {
    ++deg[v];
    ++deg[tree.parent[v]];
  }
  return deg;
}

namespace {

// p^d with a small lookup table; recursive-tree degrees rarely exceed
// O(log n) so the table almost always hits.
class PowTable {
 public:
  explicit PowTable(double p) : p_(p) {
    table_[0] = 1.0;
    for (int i = 1; i < kSize; ++i) table_[i] = table_[i - 1] * p;
  }
  double operator()(std::int64_t d) const {
    if (d < kSize) return table_[d];
    return std::pow(p_, static_cast<double>(d));
  }

 private:
  static constexpr int kSize = 64;
  double p_;
  double table_[kSize];
};

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("tree functional: p must lie in (0,1)");
  }
}

}  // namespace

double mu_of_tree(const RecursiveTree& tree, double p) {
  check_p(p);
  const PowTable pw(p);
  const auto deg = degrees(tree);
  double mu = 0.0;
  for (std::int64_t v = 0; v < tree.n; ++v) mu += pw(deg[v]);
  return mu;
}

double sigma2_of_tree(const RecursiveTree& tree, double p) {
  check_p(p);
  const PowTable pw(p);
  const auto deg = degrees(tree);
  double s = 0.0;
  for (std::int64_t v = 0; v < tree.n; ++v) {
    const double q = pw(deg[v]);
    s += q - q * q;
  }
  double edge_sum = 0.0;
  for (std::int64_t v = 1; v < tree.n; ++v) {
    edge_sum += pw(deg[v] + deg[tree.parent[v]] - 1);
  }
  return s + 2.0 * (1.0 - p) * edge_sum;
}

TreeFunctionals tree_functionals(const RecursiveTree& tree, double p) {
  check_p(p);
  TreeFunctionals f;
  f.degrees = degrees(tree);
  const PowTable pw(p);
  double s = 0.0;
  for (std::int64_t v = 0; v < tree.n; ++v) {
    const double q = pw(f.degrees[v]);
    f.mu += q;
    s += q - q * q;
  }
  double edge_sum = 0.0;
  for (std::int64_t v = 1; v < tree.n; ++v) {
    edge_sum += pw(f.degrees[v] + f.degrees[tree.parent[v]] - 1);
  }
  f.sigma2 = s + 2.0 * (1.0 - p) * edge_sum;
  return f;
}

NuSample sample_nu12(std::int64_t n, double p, Rng& rng,
                     PercolationScratch& scratch) {
  if (n < 1) throw std::invalid_argument("sample_nu12: n must be >= 1");
  check_p(p);
  auto& cluster_of = scratch.cluster_of;
  auto& size_of = scratch.size_of;
  cluster_of.resize(n);
  size_of.clear();
  NuSample out;
  cluster_of[0] = 0;
  size_of.push_back(1);
  out.nu1 = 1;
  for (std::int64_t v = 1; v < n; ++v) {
    const bool fresh = rng.bernoulli(p);
    const auto u = static_cast<std::int64_t>(rng.below(v));
    if (fresh) {
      cluster_of[v] = static_cast<std::int32_t>(size_of.size());
      size_of.push_back(1);
      ++out.nu1;
    } else {
      const std::int32_t c = cluster_of[u];
      cluster_of[v] = c;
      const std::int32_t s = size_of[c]++;
      if (s == 1) {
        --out.nu1;
        ++out.nu2;
      } else if (s == 2) {
        --out.nu2;
      }
    }
  }
  return out;
}

double sample_mu(std::int64_t n, double p, Rng& rng,
                 std::vector<std::int32_t>& degree_scratch) {
  if (n < 1) throw std::invalid_argument("sample_mu: n must be >= 1");
  check_p(p);
  auto& deg = degree_scratch;
  deg.assign(n, 0);
  for (std::int64_t v = 1; v < n; ++v) {
    const auto u = static_cast<std::int64_t>(rng.below(v));
    ++deg[u];
    ++deg[v];
  }
  const PowTable pw(p);
  double mu = 0.0;
  for (std::int64_t v = 0; v < n; ++v) mu += pw(deg[v]);
  return mu;
}

}  // namespace rwalk
