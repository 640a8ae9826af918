#include "rwalk/gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rwalk/moments.hpp"
#include "rwalk/parallel.hpp"
#include "rwalk/recursive_tree.hpp"

namespace rwalk {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / 1.41421356237309504880168872420969808);
}

double dk_sample(std::vector<double> sample, double mean, double sd) {
  if (sample.empty()) throw std::invalid_argument("dk_sample: empty sample");
  if (!(sd > 0.0)) throw std::invalid_argument("dk_sample: sd must be > 0");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double dk = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = normal_cdf((sample[i] - mean) / sd);
    dk = std::max(dk, (static_cast<double>(i) + 1.0) / n - f);
    dk = std::max(dk, f - static_cast<double>(i) / n);
  }
  return dk;
}

double dkw_halfwidth(std::int64_t n, double alpha) {
  if (n < 1) throw std::invalid_argument("dkw_halfwidth: n must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("dkw_halfwidth: alpha must lie in (0,1)");
  }
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

RateTarget parse_rate_target(const std::string& name) {
  if (name == "positive-walk") return RateTarget::kPositiveWalk;
  if (name == "negative-walk") return RateTarget::kNegativeWalk;
  if (name == "nu1") return RateTarget::kNu1;
  if (name == "mu-tree") return RateTarget::kMuTree;
  throw std::invalid_argument("unknown rate target: " + name);
}

std::string rate_target_name(RateTarget target) {
  switch (target) {
    case RateTarget::kPositiveWalk:
      return "positive-walk";
    case RateTarget::kNegativeWalk:
      return "negative-walk";
    case RateTarget::kNu1:
      return "nu1";
    case RateTarget::kMuTree:
      return "mu-tree";
  }
  return "";
}

namespace {

double target_delta(RateTarget target, std::int64_t n, double p) {
  switch (target) {
    case RateTarget::kPositiveWalk:
      return rate_delta1(n, p);
    case RateTarget::kNegativeWalk:
      return rate_delta2(n, p);
    case RateTarget::kNu1:
    case RateTarget::kMuTree:
      return 1.0 / std::sqrt(static_cast<double>(n));
  }
  return 0.0;
}

void check_target_compat(const RateExperimentConfig& c) {
  if (!(c.p > 0.0 && c.p < 1.0)) {
    throw std::invalid_argument("rate_experiment: p must lie in (0,1)");
  }
  if (c.target == RateTarget::kPositiveWalk) {
    if (c.p < 0.5) {
      throw std::invalid_argument(
          "rate_experiment: positive-walk target needs p in [1/2,1)");
    }
    if (!(c.dist.sigma0sq() > 0.0)) {
      throw std::invalid_argument(
          "rate_experiment: positive-walk target needs sigma0^2 > 0");
    }
  }
  if (c.target == RateTarget::kNegativeWalk) {
    const TheoryConstants tc = theory_constants(c.p, c.dist);
    if (!(tc.checksigmasq > 0.0)) {
      throw std::invalid_argument(
          "rate_experiment: negative-walk target needs checksigma^2 > 0");
    }
  }
  if (c.replicates < 1000) {
    throw std::invalid_argument("rate_experiment: needs N >= 1000");
  }
  if (c.n_grid.empty()) {
    throw std::invalid_argument("rate_experiment: empty n grid");
  }
  for (std::int64_t n : c.n_grid) {
    if (n < 2) throw std::invalid_argument("rate_experiment: grid n must be >= 2");
  }
}

// Fills `out` with `count` independent normalized statistics for one grid
// point; replicate i draws from stream (seed, stream_base + i).
void draw_statistics(const RateExperimentConfig& c, std::int64_t n,
                     std::uint64_t stream_base, std::vector<double>& out) {
  out.resize(c.replicates);
  const double nd = static_cast<double>(n);
  switch (c.target) {
    case RateTarget::kPositiveWalk: {
      const double center = c.dist.m1() * nd;
      const double spread = std::sqrt(c.dist.sigma0sq()) * std::sqrt(bn(n, c.p));
      parallel_for(c.replicates, c.threads, [&](std::int64_t b, std::int64_t e) {
        WalkScratch scratch;
        for (std::int64_t i = b; i < e; ++i) {
          Rng rng(c.seed, stream_base + static_cast<std::uint64_t>(i));
          const double s = simulate_terminal(WalkMode::kPositive, c.dist, c.p,
                                             n, rng, scratch);
          out[i] = (s - center) / spread;
        }
      });
      break;
    }
    case RateTarget::kNegativeWalk: {
      const TheoryConstants tc = theory_constants(c.p, c.dist);
      const double center = tc.checkb * nd;
      const double spread = std::sqrt(tc.checksigmasq) * std::sqrt(nd);
      parallel_for(c.replicates, c.threads, [&](std::int64_t b, std::int64_t e) {
        WalkScratch scratch;
        for (std::int64_t i = b; i < e; ++i) {
          Rng rng(c.seed, stream_base + static_cast<std::uint64_t>(i));
          const double s = simulate_terminal(WalkMode::kNegative, c.dist, c.p,
                                             n, rng, scratch);
          out[i] = (s - center) / spread;
        }
      });
      break;
    }
    case RateTarget::kNu1: {
      const TheoryConstants tc = theory_constants(c.p, StepDistribution::rademacher());
      const double center = nd * c.p / (2.0 - c.p);
      const double spread = std::sqrt(tc.sigma1sq) * std::sqrt(nd);
      parallel_for(c.replicates, c.threads, [&](std::int64_t b, std::int64_t e) {
        PercolationScratch scratch;
        for (std::int64_t i = b; i < e; ++i) {
          Rng rng(c.seed, stream_base + static_cast<std::uint64_t>(i));
          const NuSample s = sample_nu12(n, c.p, rng, scratch);
          out[i] = (static_cast<double>(s.nu1) - center) / spread;
        }
      });
      break;
    }
    case RateTarget::kMuTree: {
      const TheoryConstants tc = theory_constants(c.p, StepDistribution::rademacher());
      const double center = nd * c.p / (2.0 - c.p);
      const double spread = std::sqrt(tc.sigma3sq) * std::sqrt(nd);
      parallel_for(c.replicates, c.threads, [&](std::int64_t b, std::int64_t e) {
        std::vector<std::int32_t> scratch;
        for (std::int64_t i = b; i < e; ++i) {
          Rng rng(c.seed, stream_base + static_cast<std::uint64_t>(i));
          out[i] = (sample_mu(n, c.p, rng, scratch) - center) / spread;
        }
      });
      break;
    }
  }
}

}  // namespace

RateTable rate_experiment(const RateExperimentConfig& config) {
  check_target_compat(config);
  RateTable table;
  table.target = config.target;
  table.p = config.p;
  table.alpha = config.alpha;
  const double width = dkw_halfwidth(config.replicates, config.alpha);
  std::vector<double> sample;
  for (std::size_t gi = 0; gi < config.n_grid.size(); ++gi) {
    const std::int64_t n = config.n_grid[gi];
    const std::uint64_t stream_base = static_cast<std::uint64_t>(gi) << 40;
    draw_statistics(config, n, stream_base, sample);
    RatePoint point;
    point.n = n;
    point.replicates = config.replicates;
    point.dk = dk_sample(sample, 0.0, 1.0);
    point.dkw = width;
    point.delta = target_delta(config.target, n, config.p);
    point.ratio = point.dk / point.delta;
    if (point.dkw > point.dk) {
      table.warnings.push_back("DKW width exceeds estimated d_K at n=" +
                               std::to_string(n));
    }
    table.rows.push_back(point);
  }
  const double delta_max = table.rows.back().delta;
  table.conclusive = width < delta_max / 3.0;
  if (!table.conclusive) {
    table.warnings.push_back(
        "inconclusive: DKW width is not below delta(n_max)/3");
  }
  bool fittable = table.rows.size() >= 3;
  for (const auto& row : table.rows) fittable = fittable && row.dk > 0.0;
  if (fittable) {
    table.fit = fit_slope(table);
    table.has_fit = true;
  }
  return table;
}

SlopeFit fit_slope(const RateTable& table) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : table.rows) {
    if (row.dk > 0.0) {
      xs.push_back(std::log(static_cast<double>(row.n)));
      ys.push_back(std::log(row.dk));
    }
  }
  const std::size_t k = xs.size();
  if (k < 3) {
    throw std::invalid_argument("fit_slope: needs >= 3 points with dk > 0");
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(k);
  my /= static_cast<double>(k);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  SlopeFit fit;
  fit.points = static_cast<int>(k);
  fit.slope = sxy / sxx;
  const double intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double r = ys[i] - intercept - fit.slope * xs[i];
    ssr += r * r;
  }
  fit.stderr_value = std::sqrt(ssr / static_cast<double>(k - 2) / sxx);
  return fit;
}

}  // namespace rwalk
