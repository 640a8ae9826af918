#include "rwalk/walk.hpp"

#include <cmath>
#include <stdexcept>

#include "rwalk/moments.hpp"
#include "rwalk/recursive_tree.hpp"

namespace rwalk {

namespace {

void check_simulate_args(double p, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("simulate: n must be >= 1");
  if (n > kMaxTraceLength) {
    throw std::invalid_argument("simulate: n exceeds the per-trace cap");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("simulate: p must lie in (0,1)");
  }
}

}  // namespace

WalkTrace simulate(WalkMode mode, const StepDistribution& dist, double p,
                   std::int64_t n, Rng& rng) {
  check_simulate_args(p, n);
  WalkTrace t;
  t.mode = mode;
  t.eps.resize(n);
  t.choices.resize(n);
  t.steps.resize(n);
  t.partial.resize(n + 1);
  t.eps[0] = 1;
  t.choices[0] = 0;
  t.innovations.push_back(dist.sample(rng));
  t.steps[0] = t.innovations[0];
  t.partial[0] = 0.0;
  t.partial[1] = t.steps[0];
  const bool flip = (mode == WalkMode::kNegative);
  for (std::int64_t v = 1; v < n; ++v) {
    t.eps[v] = rng.bernoulli(p) ? 1 : 0;
    // U_v is drawn even when unused so the coupled recursive tree exists
    // for every trace.
    t.choices[v] = static_cast<std::int32_t>(rng.below(v));
    if (t.eps[v]) {
      t.innovations.push_back(dist.sample(rng));
      t.steps[v] = t.innovations.back();
    } else {
      const double prev = t.steps[t.choices[v]];
      t.steps[v] = flip ? -prev : prev;
    }
    t.partial[v + 1] = t.partial[v] + t.steps[v];
  }
  t.innovation_count = static_cast<std::int64_t>(t.innovations.size());
  return t;
}

WalkTrace simulate(const WalkParams& params, const StepDistribution& dist) {
  Rng rng(params.seed, 0);
  return simulate(params.mode, dist, params.p, params.n, rng);
}

WalkTrace simulate_positive(const StepDistribution& dist, double p,
                            std::int64_t n, Rng& rng) {
  return simulate(WalkMode::kPositive, dist, p, n, rng);
}

WalkTrace simulate_negative(const StepDistribution& dist, double p,
                            std::int64_t n, Rng& rng) {
  return simulate(WalkMode::kNegative, dist, p, n, rng);
}

WalkTrace simulate_injected(WalkMode mode, const InjectedRandomness& tape) {
  const std::int64_t n = static_cast<std::int64_t>(tape.eps.size());
  if (n < 1) throw std::invalid_argument("simulate_injected: empty eps");
  if (tape.eps[0] != 1) {
    throw std::invalid_argument("simulate_injected: eps[0] must be 1");
  }
  if (static_cast<std::int64_t>(tape.choices.size()) != n) {
    throw std::invalid_argument("simulate_injected: choices length mismatch");
  }
  for (std::int64_t v = 1; v < n; ++v) {
    if (tape.choices[v] < 0 || tape.choices[v] >= v) {
      throw std::invalid_argument(
          "simulate_injected: choices[v] outside {0..v-1}");
    }
  }
  std::int64_t needed = 0;
  for (std::int64_t v = 0; v < n; ++v) needed += tape.eps[v] ? 1 : 0;
  if (static_cast<std::int64_t>(tape.innovations.size()) < needed) {
    throw std::invalid_argument(
        "simulate_injected: innovations shorter than i(n)");
  }
  WalkTrace t;
  t.mode = mode;
  t.eps = tape.eps;
  t.choices = tape.choices;
  t.choices[0] = 0;
  t.innovations.assign(tape.innovations.begin(),
                       tape.innovations.begin() + needed);
  t.steps.resize(n);
  t.partial.resize(n + 1);
  t.partial[0] = 0.0;
  const bool flip = (mode == WalkMode::kNegative);
  std::int64_t next_innovation = 0;
  for (std::int64_t v = 0; v < n; ++v) {
    if (t.eps[v]) {
      t.steps[v] = t.innovations[next_innovation++];
    } else {
      const double prev = t.steps[t.choices[v]];
      t.steps[v] = flip ? -prev : prev;
    }
    t.partial[v + 1] = t.partial[v] + t.steps[v];
  }
  t.innovation_count = needed;
  return t;
}

double simulate_terminal(WalkMode mode, const StepDistribution& dist, double p,
                         std::int64_t n, Rng& rng, WalkScratch& scratch) {
  check_simulate_args(p, n);
  auto& steps = scratch.steps;
  steps.resize(n);
  steps[0] = dist.sample(rng);
  double sum = steps[0];
  const bool flip = (mode == WalkMode::kNegative);
  for (std::int64_t v = 1; v < n; ++v) {
    const bool fresh = rng.bernoulli(p);
    const std::int64_t u = static_cast<std::int64_t>(rng.below(v));
    if (fresh) {
      steps[v] = dist.sample(rng);
    } else {
      steps[v] = flip ? -steps[u] : steps[u];
    }
    sum += steps[v];
  }
  return sum;
}

double normalized_statistic(const WalkTrace& trace, const StepDistribution& dist,
                            double p) {
  const std::int64_t n = trace.n();
  const double nd = static_cast<double>(n);
  if (trace.mode == WalkMode::kPositive) {
    if (!(p >= 0.5 && p < 1.0)) {
      throw std::domain_error(
          "normalized_statistic: positive mode needs p in [1/2,1)");
    }
    if (!(dist.sigma0sq() > 0.0)) {
      throw std::domain_error("normalized_statistic: zero step variance");
    }
    const double b = bn(n, p);
    return (trace.terminal() - dist.m1() * nd) /
           (std::sqrt(dist.sigma0sq()) * std::sqrt(b));
  }
  const TheoryConstants c = theory_constants(p, dist);
  if (!(c.checksigmasq > 0.0)) {
    throw std::domain_error("normalized_statistic: checksigma^2 must be > 0");
  }
  return (trace.terminal() - c.checkb * nd) /
         (std::sqrt(c.checksigmasq) * std::sqrt(nd));
}

bool representation_check(const WalkTrace& trace) {
  const std::int64_t n = trace.n();
  RecursiveTree tree;
  tree.n = n;
  tree.parent = trace.choices;
  double weighted = 0.0;
  if (trace.mode == WalkMode::kPositive) {
    const ClusterStats stats = percolate(tree, trace.eps);
    for (std::size_t j = 0; j < stats.cluster_sizes.size(); ++j) {
      weighted += static_cast<double>(stats.cluster_sizes[j]) *
                  trace.innovations[j];
    }
  } else {
    const auto deltas = cluster_deltas(tree, trace.eps);
    for (std::size_t j = 0; j < deltas.size(); ++j) {
      weighted += static_cast<double>(deltas[j]) * trace.innovations[j];
    }
  }
  const double direct = trace.terminal();
  const double tol = 1e-9 * std::max(1.0, std::fabs(direct));
  return std::fabs(weighted - direct) <= tol;
}

std::int64_t sample_delta(std::int64_t k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("sample_delta: k must be >= 1");
  // Only depth parities are needed, not the tree itself.
  std::vector<std::uint8_t> parity(k);
  parity[0] = 0;
  std::int64_t delta = 1;
  for (std::int64_t v = 1; v < k; ++v) {
    const auto u = static_cast<std::int64_t>(rng.below(v));
    parity[v] = parity[u] ^ 1u;
    delta += parity[v] ? -1 : 1;
  }
  return delta;
}

}  // namespace rwalk
