#ifndef RWALK_GRAPH_HPP
#define RWALK_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "rwalk/rng.hpp"

namespace rwalk {

// Finite simple graph for Bernoulli bond percolation.  Vertices are 0-based
// internally; the edge-list text format is 1-based.
struct Graph {
  std::int64_t n = 0;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  std::vector<std::int32_t> degree;

  std::int64_t edge_count() const {
    return static_cast<std::int64_t>(edges.size());
  }

  static Graph from_edges(std::int64_t n,
                          std::vector<std::pair<std::int32_t, std::int32_t>> edges);
  static Graph complete(std::int64_t n);
  static Graph path(std::int64_t n);

  // Text format: first line "n m", then m lines "u v" with 1-based vertices.
  static Graph read_edge_list(std::istream& in);
};

// Keeps each edge independently with probability ptilde and returns the
// per-vertex retained degree.
std::vector<std::int32_t> percolate_graph(const Graph& graph, double ptilde,
                                          Rng& rng);

// E N_{n,d} = sum_i C(deg_i, d) ptilde^d (1-ptilde)^{deg_i - d}.
double exact_mean_count(const Graph& graph, double ptilde, int d);

// Degree-count Berry-Esseen bound evaluated without the absolute constant:
// (1/sigma2) sqrt(m p(1-p) + p^3 (1-p)^3 sum_i deg_i^3).
double be_bound(const Graph& graph, double ptilde, double sigma2);

// Monte Carlo aggregate of N_{n,d} against its exact mean.
struct DegreeCountResult {
  int d = 0;
  std::int64_t replicates = 0;
  double exact_mean = 0.0;
  double mc_mean = 0.0;
  double mc_var = 0.0;

  double stderr_mean() const;
};

// Replicate-parallel tally of N_{n,d} for d = 0..d_max; counts are merged
// as exact integers so the result is independent of the thread partition.
std::vector<DegreeCountResult> degree_count_experiment(const Graph& graph,
                                                       double ptilde, int d_max,
                                                       std::int64_t replicates,
                                                       std::uint64_t seed,
                                                       int threads);

}  // namespace rwalk

#endif  // RWALK_GRAPH_HPP
