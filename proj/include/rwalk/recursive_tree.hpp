#ifndef RWALK_RECURSIVE_TREE_HPP
#define RWALK_RECURSIVE_TREE_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "rwalk/rng.hpp"

namespace rwalk {

// Random recursive tree on vertices 0..n-1: vertex v >= 1 attaches to a
// uniform parent in {0..v-1}; vertex 0 is the root and parent[0] == 0 by
// convention.  parent[v] < v for every v >= 1.
struct RecursiveTree {
  std::int64_t n = 0;
  std::vector<std::int32_t> parent;

  static RecursiveTree from_parents(std::vector<std::int32_t> parents);
};

RecursiveTree grow_tree(std::int64_t n, Rng& rng);

// Bond-percolation census of (tree, eps): the edge (parent[v], v) is open
// iff eps[v] == 0, so vertex v joins its parent's cluster when eps[v] == 0
// and opens a new cluster when eps[v] == 1.  eps[0] must be 1.  Clusters are
// numbered in order of opening, which is exactly the innovation order of the
// coupled walk, so cluster_sizes[j] = N_{j+1}(n) (the occupancy of the
// cluster opened by innovation j+1).
struct ClusterStats {
  std::int64_t n = 0;
  std::vector<std::int32_t> cluster_of;     // per vertex
  std::vector<std::int32_t> cluster_sizes;  // per cluster, opening order
  std::map<std::int32_t, std::int64_t> nu;  // size k -> nu_k(n)

  std::int64_t cluster_count() const {
    return static_cast<std::int64_t>(cluster_sizes.size());
  }
  // N_j(n) indexed by innovation j (0-based here).
  const std::vector<std::int32_t>& occupancy() const { return cluster_sizes; }
};

ClusterStats percolate(const RecursiveTree& tree,
                       const std::vector<std::uint8_t>& eps);

// Z_l(n) = sum_k k^l nu_k(n); accepts real l (integer l is evaluated by
// repeated multiplication, fractional l through pow).
double z_stat(const ClusterStats& stats, double l);

// Var(S_n | clusters) = sigma0^2 * Z_2(n) for the positive walk.
double conditional_variance(const ClusterStats& stats, double sigma0sq);

// Number of vertices at even depth minus number at odd depth.
std::int64_t delta_tree(const RecursiveTree& tree);

// Signed cluster weights Delta(T_j(n)) for every cluster, in opening order,
// computed in one pass over (tree, eps) without materializing the subtrees.
std::vector<std::int64_t> cluster_deltas(const RecursiveTree& tree,
                                         const std::vector<std::uint8_t>& eps);

// One rooted tree per cluster, vertices relabeled 0..k-1 in order of
// appearance (the increasing-label convention).
std::vector<RecursiveTree> cluster_subtrees(const RecursiveTree& tree,
                                            const std::vector<std::uint8_t>& eps);

// Degrees in the unpercolated tree; sums to 2(n-1).
std::vector<std::int32_t> degrees(const RecursiveTree& tree);

struct TreeFunctionals {
  double mu = 0.0;      // E(nu_1(n) | T_n) = sum_i p^{D_i}
  double sigma2 = 0.0;  // Var(nu_1(n) | T_n)
  std::vector<std::int32_t> degrees;
};

double mu_of_tree(const RecursiveTree& tree, double p);
double sigma2_of_tree(const RecursiveTree& tree, double p);
TreeFunctionals tree_functionals(const RecursiveTree& tree, double p);

// Replicate samplers for the Monte Carlo experiments.  Each call grows a
// fresh (tree, eps) pair online and returns only the summary, reusing the
// caller's scratch buffers.
struct NuSample {
  std::int64_t nu1 = 0;
  std::int64_t nu2 = 0;
};

struct PercolationScratch {
  std::vector<std::int32_t> cluster_of;
  std::vector<std::int32_t> size_of;
};

NuSample sample_nu12(std::int64_t n, double p, Rng& rng,
                     PercolationScratch& scratch);

double sample_mu(std::int64_t n, double p, Rng& rng,
                 std::vector<std::int32_t>& degree_scratch);

}  // namespace rwalk

#endif  // RWALK_RECURSIVE_TREE_HPP
