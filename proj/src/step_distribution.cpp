#include "rwalk/step_distribution.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace rwalk {

namespace {
constexpr double kProbTol = 1e-12;
}

StepDistribution StepDistribution::rademacher() {
  StepDistribution d;
  d.kind_ = StepKind::kRademacher;
  d.values_ = {-1.0, 1.0};
  d.probs_ = {0.5, 0.5};
  d.cum_ = {0.5, 1.0};
  d.m1_ = 0.0;
  d.m2_ = 1.0;
  d.m3abs_ = 1.0;
  d.sigma0sq_ = 1.0;
  return d;
}

StepDistribution StepDistribution::custom_discrete(std::vector<double> values,
                                                   std::vector<double> probs) {
  if (values.empty() || values.size() != probs.size()) {
    throw std::invalid_argument("custom_discrete: empty or mismatched support");
  }
  double total = 0.0;
  for (double q : probs) {
    if (q < 0.0) {
      throw std::invalid_argument("custom_discrete: negative probability");
    }
    total += q;
  }
  if (std::fabs(total - 1.0) > kProbTol) {
    throw std::invalid_argument("custom_discrete: probabilities must sum to 1");
  }
  StepDistribution d;
  d.kind_ = StepKind::kCustomDiscrete;
  d.values_ = std::move(values);
  d.probs_ = std::move(probs);
  d.cum_.resize(d.probs_.size());
  double run = 0.0;
  for (std::size_t i = 0; i < d.probs_.size(); ++i) {
    run += d.probs_[i];
    d.cum_[i] = run;
  }
  d.cum_.back() = 1.0;
  for (std::size_t i = 0; i < d.values_.size(); ++i) {
    const double v = d.values_[i];
    const double q = d.probs_[i];
    d.m1_ += q * v;
    d.m2_ += q * v * v;
    d.m3abs_ += q * std::fabs(v) * v * v;
  }
  d.sigma0sq_ = d.m2_ - d.m1_ * d.m1_;
  if (d.sigma0sq_ < 0.0) d.sigma0sq_ = 0.0;
  return d;
}

StepDistribution StepDistribution::centered_gaussian(double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("centered_gaussian: sigma must be positive");
  }
  StepDistribution d;
  d.kind_ = StepKind::kCenteredGaussian;
  d.sigma_ = sigma;
  d.m1_ = 0.0;
  d.m2_ = sigma * sigma;
  // E|X|^3 for N(0, sigma^2) is 2 sigma^3 sqrt(2/pi).
  d.m3abs_ = 2.0 * sigma * sigma * sigma *
             std::sqrt(2.0 / 3.14159265358979323846264338327950288);
  d.sigma0sq_ = d.m2_;
  return d;
}

double StepDistribution::sample(Rng& rng) const {
  switch (kind_) {
    case StepKind::kRademacher:
      return (rng.next_u64() & 1u) ? 1.0 : -1.0;
    case StepKind::kCenteredGaussian:
      return sigma_ * rng.normal();
    case StepKind::kCustomDiscrete: {
      const double u = rng.uniform01();
      for (std::size_t i = 0; i + 1 < cum_.size(); ++i) {
        if (u < cum_[i]) return values_[i];
      }
      return values_.back();
    }
  }
  return 0.0;  // unreachable
}

std::string StepDistribution::describe() const {
  switch (kind_) {
    case StepKind::kRademacher:
      return "rademacher";
    case StepKind::kCenteredGaussian: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "centered-gaussian(sigma=%g)", sigma_);
      return buf;
    }
    case StepKind::kCustomDiscrete: {
      std::string out = "custom-discrete{";
      for (std::size_t i = 0; i < values_.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s%g:%g", i ? "," : "", values_[i],
                      probs_[i]);
        out += buf;
      }
      out += "}";
      return out;
    }
  }
  return "";
}

}  // namespace rwalk
