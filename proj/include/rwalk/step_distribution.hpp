#ifndef RWALK_STEP_DISTRIBUTION_HPP
#define RWALK_STEP_DISTRIBUTION_HPP

#include <string>
#include <vector>

#include "rwalk/rng.hpp"

namespace rwalk {

enum class StepKind { kRademacher, kCustomDiscrete, kCenteredGaussian };

// A step law together with the moments every normalization needs:
// m1, m2, E|X|^3 and sigma0^2 = m2 - m1^2.  Discrete moments are finite
// sums; the centered-gaussian third absolute moment is 2 sigma^3 sqrt(2/pi).
class StepDistribution {
 public:
  static StepDistribution rademacher();
  // values[i] drawn with probability probs[i]; probs must be nonnegative and
  // sum to 1 within 1e-12.
  static StepDistribution custom_discrete(std::vector<double> values,
                                          std::vector<double> probs);
  static StepDistribution centered_gaussian(double sigma);

  StepKind kind() const { return kind_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& probs() const { return probs_; }
  double gaussian_sigma() const { return sigma_; }

  double m1() const { return m1_; }
  double m2() const { return m2_; }
  double m3abs() const { return m3abs_; }
  double sigma0sq() const { return sigma0sq_; }

  double sample(Rng& rng) const;

  // True when the support is finite (rademacher or custom-discrete).
  bool finite_support() const { return kind_ != StepKind::kCenteredGaussian; }

  std::string describe() const;

 private:
  StepDistribution() = default;

  StepKind kind_ = StepKind::kRademacher;
  std::vector<double> values_;
  std::vector<double> probs_;
  std::vector<double> cum_;  // cumulative probabilities for sampling
  double sigma_ = 0.0;
  double m1_ = 0.0;
  double m2_ = 0.0;
  double m3abs_ = 0.0;
  double sigma0sq_ = 0.0;
};

}  // namespace rwalk

#endif  // RWALK_STEP_DISTRIBUTION_HPP
