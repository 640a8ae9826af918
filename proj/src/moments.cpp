#include "rwalk/moments.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rwalk {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// g = 7, 9-term Lanczos coefficients.
constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoef[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_series(double x) {
  // A(x) with the convention that the series is evaluated at x, i.e. the
  // k-th term divides by (x - 1 + k).
  double a = kLanczosCoef[0];
  for (int k = 1; k < 9; ++k) a += kLanczosCoef[k] / (x - 1.0 + k);
  return a;
}

// Compensated accumulator (Kahan-Neumaier).
class Accumulator {
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

void require_p_open(double p, const char* where) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument(std::string(where) + ": p must lie in (0,1)");
  }
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("log_gamma: argument must be positive");
  }
  if (x < 0.5) {
    // Reflection keeps the series argument away from the poles.
    return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
  }
  const double t = x + kLanczosG - 0.5;
  const double a = lanczos_series(x);
  return (x - 0.5) * std::log(t) - t +
         std::log(2.50662827463100050241576528481104525 * a);  // sqrt(2 pi)
}

double log_gamma_ratio(double x, double a) {
  if (!(x > 0.0) || !(a >= 0.0)) {
    throw std::invalid_argument("log_gamma_ratio: need x > 0, a >= 0");
  }
  if (a == 0.0) return 0.0;
  if (x < 0.5) return log_gamma(x + a) - log_gamma(x);
  const double t1 = x + kLanczosG - 0.5;
  const double t2 = x + a + kLanczosG - 0.5;
  // (x+a-1/2) log t2 - (x-1/2) log t1 rearranged so no large terms cancel:
  // (x-1/2) log1p(a/t1) + a log t2.
  return (x - 0.5) * std::log1p(a / t1) + a * std::log(t2) - a +
         std::log(lanczos_series(x + a) / lanczos_series(x));
}

double euler_gamma() {
  static const bool verified = [] {
    const std::int64_t n = 100000;
    const double h = harmonic(n);
    const double approx = h - std::log(static_cast<double>(n)) -
                          0.5 / n + 1.0 / (12.0 * static_cast<double>(n) * n);
    if (std::fabs(approx - kEulerGamma) > 1e-10) {
      throw std::logic_error("euler_gamma: partial-sum verification failed");
    }
    return true;
  }();
  (void)verified;
  return kEulerGamma;
}

double harmonic(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("harmonic: n must be >= 0");
  Accumulator acc;
  for (std::int64_t k = 1; k <= n; ++k) acc.add(1.0 / static_cast<double>(k));
  return acc.value();
}

namespace {

constexpr int kMaxLevel = 16;

// One forward step of the joint E Z_1..E Z_lmax recursion, shared by ez and
// varz2.  `values[m-1]` holds E Z_m(k) on entry and E Z_m(k+1) on exit.
void ez_step(std::vector<Accumulator>& values, int lmax, std::int64_t k,
             double p, const std::vector<std::vector<double>>& choose) {
  const double w = (1.0 - p) / static_cast<double>(k);
  std::array<double, kMaxLevel> current;
  for (int m = 1; m <= lmax; ++m) current[m - 1] = values[m - 1].value();
  for (int m = 1; m <= lmax; ++m) {
    double inc = p;
    for (int j = 0; j < m; ++j) inc += w * choose[m][j] * current[j];
    values[m - 1].add(inc);
  }
}

std::vector<std::vector<double>> pascal_rows(int lmax) {
  std::vector<std::vector<double>> choose(lmax + 1);
  for (int m = 0; m <= lmax; ++m) {
    choose[m].resize(m + 1);
    choose[m][0] = 1.0;
    choose[m][m] = 1.0;
    for (int j = 1; j < m; ++j) {
      choose[m][j] = choose[m - 1][j - 1] + choose[m - 1][j];
    }
  }
  return choose;
}

void check_ez_args(int l, std::int64_t n, double p) {
  if (l < 1 || l > kMaxLevel) {
    throw std::invalid_argument("ez: l must lie in {1..16}");
  }
  if (n < 1) throw std::invalid_argument("ez: n must be >= 1");
  require_p_open(p, "ez");
}

}  // namespace

double ez(int l, std::int64_t n, double p) {
  check_ez_args(l, n, p);
  const auto choose = pascal_rows(l);
  std::vector<Accumulator> values(l);
  for (auto& v : values) v.add(1.0);  // every Z_m(1) = 1
  for (std::int64_t k = 1; k < n; ++k) {
    ez_step(values, l, k, p, choose);
  }
  const double out = values[l - 1].value();
  if (!std::isfinite(out)) {
    throw std::overflow_error("ez: value exceeded the representable range");
  }
  return out;
}

std::vector<std::vector<double>> ez_table(int lmax, std::int64_t n, double p) {
  check_ez_args(lmax, n, p);
  const auto choose = pascal_rows(lmax);
  std::vector<Accumulator> values(lmax);
  for (auto& v : values) v.add(1.0);
  std::vector<std::vector<double>> table(lmax,
                                         std::vector<double>(n, 0.0));
  for (int m = 1; m <= lmax; ++m) table[m - 1][0] = 1.0;
  for (std::int64_t k = 1; k < n; ++k) {
    ez_step(values, lmax, k, p, choose);
    for (int m = 1; m <= lmax; ++m) {
      const double v = values[m - 1].value();
      if (!std::isfinite(v)) {
        throw std::overflow_error("ez_table: value exceeded range");
      }
      table[m - 1][k] = v;
    }
  }
  return table;
}

MomentTable build_moment_table(int lmax, std::int64_t n, double p) {
  MomentTable table;
  table.p = p;
  table.lmax = lmax;
  table.n = n;
  table.ez = ez_table(lmax, n, p);
  table.varz2 = varz2_table(n, p);
  return table;
}

double ez2_closed(std::int64_t n, double p) {
  if (n < 1) throw std::invalid_argument("ez2_closed: n must be >= 1");
  require_p_open(p, "ez2_closed");
  if (std::fabs(p - 0.5) < 1e-12) {
    return static_cast<double>(n) * harmonic(n);
  }
  return (2.0 * (1.0 - p) * a_n_l(n, 2.0, p) - static_cast<double>(n)) /
         (1.0 - 2.0 * p);
}

namespace {

// Shared forward pass: calls sink(k, var_k) for k = 1..n.
template <typename Sink>
void varz2_scan(std::int64_t n, double p, Sink&& sink) {
  check_ez_args(3, n, p);
  const auto choose = pascal_rows(3);
  std::vector<Accumulator> values(3);
  for (auto& v : values) v.add(1.0);
  double var = 0.0;
  sink(static_cast<std::int64_t>(1), var);
  for (std::int64_t k = 1; k < n; ++k) {
    const double ez2 = values[1].value();
    const double ez3 = values[2].value();
    const double kd = static_cast<double>(k);
    const double gamma_prime = (kd + 4.0 * (1.0 - p)) / kd;
    const double alpha = 4.0 * (1.0 - p) / kd * ez3 -
                         4.0 * (1.0 - p) * (1.0 - p) / (kd * kd) * ez2 * ez2;
    var = gamma_prime * var + alpha;
    if (!std::isfinite(var)) {
      throw std::overflow_error("varz2: value exceeded range");
    }
    ez_step(values, 3, k, p, choose);
    sink(k + 1, var);
  }
}

}  // namespace

double varz2(std::int64_t n, double p) {
  double out = 0.0;
  varz2_scan(n, p, [&](std::int64_t k, double v) {
    if (k == n) out = v;
  });
  return out;
}

std::vector<double> varz2_table(std::int64_t n, double p) {
  std::vector<double> table(n, 0.0);
  varz2_scan(n, p, [&](std::int64_t k, double v) { table[k - 1] = v; });
  return table;
}

double a_product(std::int64_t i, std::int64_t j, double x) {
  if (i < 1 || j < i) {
    throw std::invalid_argument("a_product: need 1 <= i <= j");
  }
  if (!(x >= 0.0) || x >= static_cast<double>(i)) {
    throw std::invalid_argument("a_product: need 0 <= x < i");
  }
  double prod = 1.0;
  for (std::int64_t k = i; k < j; ++k) {
    prod *= 1.0 - x / static_cast<double>(k);
  }
  return prod;
}

double a_n_l(std::int64_t n, double l, double p) {
  if (n < 1) throw std::invalid_argument("a_n_l: n must be >= 1");
  const double a = l * (1.0 - p);
  if (!(a >= 0.0)) throw std::invalid_argument("a_n_l: need l(1-p) >= 0");
  if (n == 1) return 1.0;  // empty product
  return std::exp(log_gamma_ratio(static_cast<double>(n), a) -
                  log_gamma(a + 1.0));
}

double bn(std::int64_t n, double p) {
  if (!(p >= 0.5 && p < 1.0)) {
    throw std::invalid_argument("bn: requires p in [1/2, 1)");
  }
  if (p == 0.5) {
    if (n < 2) throw std::invalid_argument("bn: log branch needs n >= 2");
    const double nd = static_cast<double>(n);
    return nd * std::log(nd) + euler_gamma() * nd;
  }
  if (n < 1) throw std::invalid_argument("bn: n must be >= 1");
  const double nd = static_cast<double>(n);
  const double gamma_2m2p = std::exp(log_gamma(2.0 - 2.0 * p));
  return nd / (2.0 * p - 1.0) -
         std::pow(nd, 2.0 - 2.0 * p) / ((2.0 * p - 1.0) * gamma_2m2p);
}

double b_l(double l, std::int64_t n, double p) {
  require_p_open(p, "b_l");
  if (n < 1) throw std::invalid_argument("b_l: n must be >= 1");
  const double a = l * (1.0 - p);
  const double nd = static_cast<double>(n);
  if (a > 1.0) return std::pow(nd, a);
  if (a == 1.0) {
    if (n < 2) throw std::invalid_argument("b_l: log branch needs n >= 2");
    return nd * std::log(nd);
  }
  return nd;
}

double rate_delta1(std::int64_t n, double p) {
  if (!(p >= 0.5 && p < 1.0)) {
    throw std::invalid_argument("rate_delta1: requires p in [1/2, 1)");
  }
  if (n < 2) throw std::invalid_argument("rate_delta1: n must be >= 2");
  const double nd = static_cast<double>(n);
  if (p == 0.5) return std::pow(std::log(nd), -1.5);
  if (p == 2.0 / 3.0) return std::log(nd) / std::sqrt(nd);
  if (p < 2.0 / 3.0) return std::pow(nd, 1.5 - 3.0 * p);
  return 1.0 / std::sqrt(nd);
}

double rate_delta2(std::int64_t n, double p) {
  require_p_open(p, "rate_delta2");
  if (n < 2) throw std::invalid_argument("rate_delta2: n must be >= 2");
  const double nd = static_cast<double>(n);
  if (p == 1.0 / 3.0) return std::log(nd) / std::sqrt(nd);
  if (p < 1.0 / 3.0) return std::pow(nd, -1.5 * p);
  return 1.0 / std::sqrt(nd);
}

TheoryConstants theory_constants(double p, const StepDistribution& dist) {
  require_p_open(p, "theory_constants");
  TheoryConstants c;
  c.p = p;
  c.m1 = dist.m1();
  c.m2 = dist.m2();
  c.sigma0sq = dist.sigma0sq();
  c.checkb = p * c.m1 / (2.0 - p);
  c.checksigmasq = (c.m2 - c.checkb * c.checkb) / (3.0 - 2.0 * p);
  const double q = 1.0 - p;
  c.sigma1sq =
      2.0 * p * q * (3.0 - p) / ((3.0 - 2.0 * p) * (2.0 - p) * (2.0 - p));
  c.sigma2sq = c.m2 / (3.0 - 2.0 * p) - p * c.m1 * c.m1 / (2.0 - p);
  c.sigma3sq = 2.0 * p * p * q * q * q * q /
               ((2.0 - p * p) * (2.0 - p) * (2.0 - p) * (3.0 - 2.0 * p));
  c.sigma4sq = 2.0 * p * q * (3.0 - p * p * p) /
               ((2.0 - p) * (2.0 - p * p) * (3.0 - 2.0 * p));
  if (std::fabs(c.residual_checksigma()) > 1e-12 ||
      std::fabs(c.residual_sigma1()) > 1e-12) {
    throw std::logic_error("theory_constants: identity residual exceeded 1e-12");
  }
  return c;
}

double exact_mean_mu(std::int64_t n, double p) {
  if (n < 1) throw std::invalid_argument("exact_mean_mu: n must be >= 1");
  require_p_open(p, "exact_mean_mu");
  const double x = 1.0 - p;
  // Suffix products a_{i,n}(x) accumulated from i = n-1 downward.
  double suffix = 1.0;  // a_{n,n}
  Accumulator sum;
  double a_1n = 1.0;
  for (std::int64_t i = n - 1; i >= 1; --i) {
    suffix *= 1.0 - x / static_cast<double>(i);
    sum.add(suffix);
    if (i == 1) a_1n = suffix;
  }
  if (n == 1) a_1n = 1.0;
  return p * sum.value() + (1.0 - p) * a_1n + p;
}

}  // namespace rwalk
