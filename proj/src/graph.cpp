#include "rwalk/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <mutex>
#include <stdexcept>

#include "rwalk/moments.hpp"
#include "rwalk/parallel.hpp"

namespace rwalk {

Graph Graph::from_edges(std::int64_t n,
                        std::vector<std::pair<std::int32_t, std::int32_t>> edges) {
  if (n < 1) throw std::invalid_argument("graph: n must be >= 1");
  Graph g;
  g.n = n;
  g.degree.assign(n, 0);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw std::invalid_argument("graph: edge endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("graph: self-loops not allowed");
    ++g.degree[u];
    ++g.degree[v];
  }
  g.edges = std::move(edges);
  return g;
}

Graph Graph::complete(std::int64_t n) {
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::int32_t u = 0; u < n; ++u) {
    for (std::int32_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return from_edges(n, std::move(edges));
}

Graph Graph::path(std::int64_t n) {
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  edges.reserve(n - 1);
  for (std::int32_t v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return from_edges(n, std::move(edges));
}

Graph Graph::read_edge_list(std::istream& in) {
  std::int64_t n = 0;
  std::int64_t m = 0;
  if (!(in >> n >> m)) {
    throw std::runtime_error("edge list: expected header \"n m\"");
  }
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  edges.reserve(m);
  for (std::int64_t e = 0; e < m; ++e) {
    std::int64_t u = 0;
    std::int64_t v = 0;
    if (!(in >> u >> v)) {
      throw std::runtime_error("edge list: truncated edge rows");
    }
    if (u < 1 || v < 1 || u > n || v > n) {
      throw std::runtime_error("edge list: vertex outside 1..n");
    }
    edges.emplace_back(static_cast<std::int32_t>(u - 1),
                       static_cast<std::int32_t>(v - 1));
  }
  return from_edges(n, std::move(edges));
}

std::vector<std::int32_t> percolate_graph(const Graph& graph, double ptilde,
                                          Rng& rng) {
  if (!(ptilde > 0.0 && ptilde < 1.0)) {
    throw std::invalid_argument("percolate_graph: ptilde must lie in (0,1)");
  }
  std::vector<std::int32_t> retained(graph.n, 0);
  for (const auto& [u, v] : graph.edges) {
    if (rng.bernoulli(ptilde)) {
      ++retained[u];
      ++retained[v];
    }
  }
  return retained;
}

double exact_mean_count(const Graph& graph, double ptilde, int d) {
  if (!(ptilde > 0.0 && ptilde < 1.0)) {
    throw std::invalid_argument("exact_mean_count: ptilde must lie in (0,1)");
  }
  if (d < 0) throw std::invalid_argument("exact_mean_count: d must be >= 0");
  const double lp = std::log(ptilde);
  const double lq = std::log1p(-ptilde);
  double sum = 0.0;
  for (const std::int32_t deg : graph.degree) {
    if (d > deg) continue;
    const double lchoose = log_gamma(deg + 1.0) - log_gamma(d + 1.0) -
                           log_gamma(deg - d + 1.0);
    sum += std::exp(lchoose + d * lp + (deg - d) * lq);
  }
  return sum;
}

double be_bound(const Graph& graph, double ptilde, double sigma2) {
  if (!(ptilde > 0.0 && ptilde < 1.0)) {
    throw std::invalid_argument("be_bound: ptilde must lie in (0,1)");
  }
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("be_bound: sigma2 must be > 0");
  }
  const double q = 1.0 - ptilde;
  double cube_sum = 0.0;
  for (const std::int32_t deg : graph.degree) {
    cube_sum += static_cast<double>(deg) * deg * deg;
  }
  const double inner = static_cast<double>(graph.edge_count()) * ptilde * q +
                       ptilde * ptilde * ptilde * q * q * q * cube_sum;
  return std::sqrt(inner) / sigma2;
}

double DegreeCountResult::stderr_mean() const {
  if (replicates <= 0) return 0.0;
  return std::sqrt(std::max(mc_var, 0.0) / static_cast<double>(replicates));
}

std::vector<DegreeCountResult> degree_count_experiment(const Graph& graph,
                                                       double ptilde, int d_max,
                                                       std::int64_t replicates,
                                                       std::uint64_t seed,
                                                       int threads) {
  if (d_max < 0) {
    throw std::invalid_argument("degree_count_experiment: d_max must be >= 0");
  }
  if (replicates < 1) {
    throw std::invalid_argument("degree_count_experiment: needs replicates >= 1");
  }
  std::vector<std::int64_t> sum(d_max + 1, 0);
  std::vector<std::int64_t> sq_sum(d_max + 1, 0);
  std::mutex merge_mutex;
  parallel_for(replicates, threads, [&](std::int64_t b, std::int64_t e) {
    std::vector<std::int64_t> counts(d_max + 1, 0);
    std::vector<std::int64_t> local_sum(d_max + 1, 0);
    std::vector<std::int64_t> local_sq(d_max + 1, 0);
    for (std::int64_t i = b; i < e; ++i) {
      Rng rng(seed, static_cast<std::uint64_t>(i));
      const auto retained = percolate_graph(graph, ptilde, rng);
      std::fill(counts.begin(), counts.end(), 0);
      for (const std::int32_t d : retained) {
        if (d <= d_max) ++counts[d];
      }
      for (int d = 0; d <= d_max; ++d) {
        local_sum[d] += counts[d];
        local_sq[d] += counts[d] * counts[d];
      }
    }
    const std::lock_guard<std::mutex> lock(merge_mutex);
    for (int d = 0; d <= d_max; ++d) {
      sum[d] += local_sum[d];
      sq_sum[d] += local_sq[d];
    }
  });
  std::vector<DegreeCountResult> out;
  out.reserve(d_max + 1);
  for (int d = 0; d <= d_max; ++d) {
    DegreeCountResult r;
    r.d = d;
    r.replicates = replicates;
    r.exact_mean = exact_mean_count(graph, ptilde, d);
    r.mc_mean = static_cast<double>(sum[d]) / static_cast<double>(replicates);
    r.mc_var = static_cast<double>(sq_sum[d]) / static_cast<double>(replicates) -
               r.mc_mean * r.mc_mean;
    out.push_back(r);
  }
  return out;
}

}  // namespace rwalk
