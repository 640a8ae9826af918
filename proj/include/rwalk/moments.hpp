#ifndef RWALK_MOMENTS_HPP
#define RWALK_MOMENTS_HPP

#include <cstdint>
#include <vector>

#include "rwalk/step_distribution.hpp"

namespace rwalk {

// log Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
double log_gamma(double x);

// log Gamma(x + a) - log Gamma(x) for x > 0, a >= 0, evaluated without the
// large-argument cancellation of subtracting two log-gammas.
double log_gamma_ratio(double x, double a);

// Euler's constant, verified on first use against the partial-sum limit
// sum 1/k - ln n (with the 1/(2n) - 1/(12 n^2) correction) to 1e-10.
double euler_gamma();

// Harmonic number H_n, compensated summation.
double harmonic(std::int64_t n);

// E Z_l(n) by the exact forward recursion
//   E Z_l(1) = 1,
//   E Z_l(n+1) = E Z_l(n) + p + ((1-p)/n) sum_{j=0}^{l-1} C(l,j) E Z_{j+1}(n).
// Throws std::overflow_error if the value leaves the representable range.
double ez(int l, std::int64_t n, double p);

// E Z_l(k) for k = 1..n, all levels 1..lmax at once (row l-1 is level l).
std::vector<std::vector<double>> ez_table(int lmax, std::int64_t n, double p);

// Read-only snapshot of the moment recursions up to horizon n, for callers
// that sweep many k values.
struct MomentTable {
  double p = 0.5;
  int lmax = 0;
  std::int64_t n = 0;
  std::vector<std::vector<double>> ez;  // [l-1][k-1] = E Z_l(k)
  std::vector<double> varz2;            // [k-1] = Var Z_2(k)

  // Recursion multipliers (k + 2(1-p))/k and (k + 4(1-p))/k.
  double gamma_k(std::int64_t k) const {
    return (static_cast<double>(k) + 2.0 * (1.0 - p)) / static_cast<double>(k);
  }
  double gamma_prime_k(std::int64_t k) const {
    return (static_cast<double>(k) + 4.0 * (1.0 - p)) / static_cast<double>(k);
  }
};

MomentTable build_moment_table(int lmax, std::int64_t n, double p);

// Closed form for E Z_2(n): (2(1-p) a_n(2) - n)/(1-2p) away from p = 1/2,
// n H_n at p = 1/2 (branch taken within |p - 1/2| < 1e-12).
double ez2_closed(std::int64_t n, double p);

// Var Z_2(n) by the forward recursion Var(n+1) = gamma'_n Var(n) + alpha_n,
// alpha_n = (4(1-p)/n) E Z_3(n) - (4(1-p)^2/n^2) (E Z_2(n))^2.
double varz2(std::int64_t n, double p);

// Var Z_2(k) for k = 1..n.
std::vector<double> varz2_table(std::int64_t n, double p);

// a_{i,j}(x) = prod_{k=i}^{j-1} (1 - x/k), 1 <= i <= j, 0 <= x < i.
double a_product(std::int64_t i, std::int64_t j, double x);

// a_n(l) = Gamma(n + l(1-p)) / (Gamma(n) Gamma(l(1-p)+1))
//        = prod_{k=1}^{n-1} (k + l(1-p))/k, via log-gamma.
double a_n_l(std::int64_t n, double l, double p);

// Normalizer b_n of the positive walk: n/(2p-1) - n^{2-2p}/((2p-1)Gamma(2-2p))
// for p > 1/2, n log n + gamma n at p = 1/2.  Requires p in [1/2, 1).
double bn(std::int64_t n, double p);

// b_l(n): n^{l(1-p)} if l(1-p) > 1, n log n if l(1-p) = 1, n otherwise.
double b_l(double l, std::int64_t n, double p);

// Theorem rate sequences.  delta1 requires p in [1/2, 1), delta2 p in (0,1).
double rate_delta1(std::int64_t n, double p);
double rate_delta2(std::int64_t n, double p);

struct TheoryConstants {
  double p = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double sigma0sq = 0.0;
  double checkb = 0.0;        // p m1 / (2-p)
  double checksigmasq = 0.0;  // (m2 - checkb^2)/(3-2p)
  double sigma1sq = 0.0;      // 2p(1-p)(3-p) / ((3-2p)(2-p)^2)
  double sigma2sq = 0.0;      // m2/(3-2p) - p m1^2/(2-p)
  double sigma3sq = 0.0;      // 2p^2(1-p)^4 / ((2-p^2)(2-p)^2(3-2p))
  double sigma4sq = 0.0;      // 2p(1-p)(3-p^3) / ((2-p)(2-p^2)(3-2p))

  // Residuals of the two structural identities; both must vanish to 1e-12.
  double residual_checksigma() const {
    return sigma2sq + m1 * m1 * sigma1sq - checksigmasq;
  }
  double residual_sigma1() const { return sigma3sq + sigma4sq - sigma1sq; }
};

TheoryConstants theory_constants(double p, const StepDistribution& dist);

// E mu(T_n) = p sum_{i=1}^{n-1} a_{i,n}(1-p) + (1-p) a_{1,n}(1-p) + p, exact.
double exact_mean_mu(std::int64_t n, double p);

}  // namespace rwalk

#endif  // RWALK_MOMENTS_HPP
