#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rwalk/moments.hpp"
#include "rwalk/step_distribution.hpp"

using rwalk::StepDistribution;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

double direct_a_n_l(std::int64_t n, double l, double p) {
  const double a = l * (1.0 - p);
  double prod = 1.0;
  for (std::int64_t k = 1; k < n; ++k) {
    prod *= (static_cast<double>(k) + a) / static_cast<double>(k);
  }
  return prod;
}
}  // namespace

TEST_CASE("log_gamma spot values and agreement with std::lgamma") {
  CHECK(rwalk::log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(rwalk::log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(rwalk::log_gamma(0.5) ==
        doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-14));
  CHECK(rwalk::log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  for (double x = 0.05; x < 10.0; x += 0.173) {
    CHECK(rwalk::log_gamma(x) ==
          doctest::Approx(std::lgamma(x)).epsilon(1e-12).scale(1.0));
  }
  for (double x = 10.0; x <= 1e8; x *= 3.7) {
    const double mine = rwalk::log_gamma(x);
    const double ref = std::lgamma(x);
    CHECK(std::fabs(mine - ref) <= 1e-13 * std::fabs(ref));
  }
  CHECK_THROWS_AS(rwalk::log_gamma(0.0), std::invalid_argument);
  CHECK_THROWS_AS(rwalk::log_gamma(-2.5), std::invalid_argument);
}

TEST_CASE("log_gamma_ratio avoids large-argument cancellation") {
  CHECK(rwalk::log_gamma_ratio(5.0, 0.0) == 0.0);
  // Gamma(n+1)/Gamma(n) = n
  for (const double n : {3.0, 17.0, 1e4, 1e7}) {
    CHECK(std::exp(rwalk::log_gamma_ratio(n, 1.0)) ==
          doctest::Approx(n).epsilon(1e-12));
  }
  // Gamma(n+2)/Gamma(n) = n(n+1)
  CHECK(std::exp(rwalk::log_gamma_ratio(1e6, 2.0)) ==
        doctest::Approx(1e6 * (1e6 + 1.0)).epsilon(1e-12));
  for (double x = 0.3; x < 50.0; x += 1.7) {
    for (const double a : {0.25, 0.5, 1.5, 3.0}) {
      CHECK(rwalk::log_gamma_ratio(x, a) ==
            doctest::Approx(std::lgamma(x + a) - std::lgamma(x))
                .epsilon(1e-11)
                .scale(1.0));
    }
  }
}

TEST_CASE("euler gamma and harmonic numbers") {
  CHECK(rwalk::euler_gamma() ==
        doctest::Approx(0.5772156649015329).epsilon(1e-14));
  CHECK(rwalk::harmonic(0) == 0.0);
  CHECK(rwalk::harmonic(1) == 1.0);
  CHECK(rwalk::harmonic(3) == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("ez small-n hand values") {
  for (const double p : {0.25, 0.5, 0.75, 0.9}) {
    CHECK(rwalk::ez(2, 2, p) == doctest::Approx(4.0 - 2.0 * p).epsilon(1e-14));
    CHECK(rwalk::ez(1, 1, p) == 1.0);
  }
  CHECK(rwalk::ez(2, 3, 0.5) == doctest::Approx(5.5).epsilon(1e-14));
  // E Z_1(n) = n
  for (const double p : {0.3, 0.5, 0.8}) {
    for (const std::int64_t n : {std::int64_t(10), std::int64_t(1000)}) {
      CHECK(rwalk::ez(1, n, p) ==
            doctest::Approx(static_cast<double>(n)).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(rwalk::ez(0, 5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(rwalk::ez(2, 5, 1.0), std::invalid_argument);
}

TEST_CASE("ez_table matches single-shot evaluation") {
  const auto table = rwalk::ez_table(4, 50, 0.35);
  for (const int l : {1, 2, 3, 4}) {
    for (const std::int64_t n : {std::int64_t(1), std::int64_t(7),
                                 std::int64_t(50)}) {
      CHECK(table[l - 1][n - 1] ==
            doctest::Approx(rwalk::ez(l, n, 0.35)).epsilon(1e-14));
    }
  }
}

TEST_CASE("varz2 hand values") {
  CHECK(rwalk::varz2(1, 0.3) == 0.0);
  CHECK(rwalk::varz2(2, 0.5) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(rwalk::varz2(3, 0.5) == doctest::Approx(4.75).epsilon(1e-13));
  const auto table = rwalk::varz2_table(100, 0.6);
  CHECK(table[0] == 0.0);
  CHECK(table[99] == doctest::Approx(rwalk::varz2(100, 0.6)).epsilon(1e-14));
}

TEST_CASE("ez2 closed form") {
  CHECK(rwalk::ez2_closed(3, 0.5) == doctest::Approx(5.5).epsilon(1e-12));
  for (const double p : {0.3, 0.75, 0.9}) {
    CHECK(rwalk::ez2_closed(1, p) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(rwalk::ez2_closed(10000, 0.75) ==
        doctest::Approx(rwalk::ez(2, 10000, 0.75)).epsilon(1e-9));
}

TEST_CASE("a_product") {
  CHECK(rwalk::a_product(4, 4, 2.0) == 1.0);
  CHECK(rwalk::a_product(1, 3, 0.5) == doctest::Approx(0.375).epsilon(1e-15));
  for (const double p : {0.2, 0.6}) {
    CHECK(rwalk::a_product(1, 2, 1.0 - p) == doctest::Approx(p).epsilon(1e-15));
  }
  CHECK_THROWS_AS(rwalk::a_product(2, 5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(rwalk::a_product(0, 5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rwalk::a_product(3, 2, 0.5), std::invalid_argument);
}

TEST_CASE("a_n_l examples and product cross-check") {
  for (const double l : {1.0, 2.0, 5.0}) CHECK(rwalk::a_n_l(1, l, 0.4) == 1.0);
  CHECK(rwalk::a_n_l(2, 2.0, 0.75) == doctest::Approx(1.5).epsilon(1e-14));
  // telescoping: l(1-p) = 1 gives prod (k+1)/k = n
  CHECK(rwalk::a_n_l(10, 2.0, 0.5) == doctest::Approx(10.0).epsilon(1e-13));
  for (const double p : {0.3, 0.5, 0.75}) {
    for (const double l : {1.0, 2.0, 3.0, 4.0}) {
      for (const std::int64_t n : {std::int64_t(10), std::int64_t(100),
                                   std::int64_t(10000)}) {
        CHECK(rwalk::a_n_l(n, l, p) ==
              doctest::Approx(direct_a_n_l(n, l, p)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("bn values and positivity") {
  CHECK(rwalk::bn(100, 0.75) ==
        doctest::Approx(200.0 - 20.0 / std::sqrt(kPi)).epsilon(1e-14));
  CHECK(rwalk::bn(100, 0.75) == doctest::Approx(188.7162).epsilon(1e-6));
  for (const std::int64_t n : {std::int64_t(2), std::int64_t(1000)}) {
    const double nd = static_cast<double>(n);
    CHECK(rwalk::bn(n, 0.5) ==
          doctest::Approx(nd * std::log(nd) + rwalk::euler_gamma() * nd)
              .epsilon(1e-14));
  }
  for (double p = 0.5; p < 1.0; p += 0.05) {
    CHECK(rwalk::bn(2, p) > 0.0);
    CHECK(rwalk::bn(1000, p) > 0.0);
  }
  CHECK_THROWS_AS(rwalk::bn(100, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(rwalk::bn(1, 0.5), std::invalid_argument);
}

TEST_CASE("b_l branch selection") {
  const double n = 100.0;
  CHECK(rwalk::b_l(3.0, 100, 0.5) == doctest::Approx(std::pow(n, 1.5)));
  CHECK(rwalk::b_l(2.0, 100, 0.5) == doctest::Approx(n * std::log(n)));
  CHECK(rwalk::b_l(4.0, 100, 0.75) == doctest::Approx(n * std::log(n)));
  CHECK(rwalk::b_l(1.0, 100, 0.5) == 100.0);
}

TEST_CASE("rate sequences") {
  CHECK(rwalk::rate_delta1(10000, 0.8) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(rwalk::rate_delta2(10000, 0.5) == doctest::Approx(0.01).epsilon(1e-15));
  const double n = 1000.0;
  CHECK(rwalk::rate_delta1(1000, 2.0 / 3.0) ==
        doctest::Approx(std::log(n) / std::sqrt(n)));
  CHECK(rwalk::rate_delta1(1000, 0.55) ==
        doctest::Approx(std::pow(n, 1.5 - 3.0 * 0.55)));
  CHECK(rwalk::rate_delta1(1000, 0.5) ==
        doctest::Approx(std::pow(std::log(n), -1.5)));
  CHECK(rwalk::rate_delta2(1000, 1.0 / 3.0) ==
        doctest::Approx(std::log(n) / std::sqrt(n)));
  CHECK(rwalk::rate_delta2(1000, 0.2) == doctest::Approx(std::pow(n, -0.3)));
  CHECK_THROWS_AS(rwalk::rate_delta1(100, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(rwalk::rate_delta2(100, 0.0), std::invalid_argument);
}

TEST_CASE("theory constants at p=1/2 for the rademacher law") {
  const auto c = rwalk::theory_constants(0.5, StepDistribution::rademacher());
  CHECK(c.checkb == 0.0);
  CHECK(c.checksigmasq == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.sigma1sq == doctest::Approx(5.0 / 18.0).epsilon(1e-15));
  CHECK(c.sigma2sq == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.sigma3sq == doctest::Approx(1.0 / 252.0).epsilon(1e-15));
  CHECK(c.sigma4sq == doctest::Approx(23.0 / 84.0).epsilon(1e-15));
}

TEST_CASE("theory constants identities across p and laws") {
  const auto rad = StepDistribution::rademacher();
  const auto two = StepDistribution::custom_discrete({0.0, 2.0}, {0.5, 0.5});
  const auto skew = StepDistribution::custom_discrete({-1.0, 3.0}, {0.75, 0.25});
  for (int i = 1; i <= 99; ++i) {
    const double p = i / 100.0;
    for (const auto* d : {&rad, &two, &skew}) {
      const auto c = rwalk::theory_constants(p, *d);
      CHECK(std::fabs(c.residual_checksigma()) <= 1e-12);
      CHECK(std::fabs(c.residual_sigma1()) <= 1e-12);
      CHECK(c.sigma1sq >= 0.0);
      CHECK(c.sigma3sq >= 0.0);
      CHECK(c.sigma4sq >= 0.0);
      CHECK(c.checksigmasq >= 0.0);
    }
    // m1 = 0 forces bcheck = 0 and sigma2^2 = checksigma^2
    const auto c = rwalk::theory_constants(p, rad);
    CHECK(c.checkb == 0.0);
    CHECK(c.sigma2sq == doctest::Approx(c.checksigmasq).epsilon(1e-15));
  }
  const auto c = rwalk::theory_constants(0.5, two);
  CHECK(c.checkb == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(c.checksigmasq == doctest::Approx(17.0 / 18.0).epsilon(1e-15));
}

TEST_CASE("exact mean of mu(T_n)") {
  CHECK(rwalk::exact_mean_mu(1, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  for (const double p : {0.2, 0.5, 0.8}) {
    CHECK(rwalk::exact_mean_mu(2, p) == doctest::Approx(2.0 * p).epsilon(1e-14));
    CHECK(rwalk::exact_mean_mu(3, p) ==
          doctest::Approx(p * p + 2.0 * p).epsilon(1e-14));
  }
  // E mu(T_n) = np/(2-p) + O(1)
  const double approx = 10000.0 * 0.5 / 1.5;
  CHECK(std::fabs(rwalk::exact_mean_mu(10000, 0.5) - approx) <= 5.0);
}

TEST_CASE("moment table snapshot") {
  const auto table = rwalk::build_moment_table(3, 200, 0.4);
  CHECK(table.lmax == 3);
  CHECK(table.n == 200);
  for (std::int64_t k = 1; k <= 200; ++k) {
    // E Z_1(k) = k
    CHECK(table.ez[0][k - 1] ==
          doctest::Approx(static_cast<double>(k)).epsilon(1e-11));
    if (k > 1) {
      // nondecreasing in k and in l
      CHECK(table.ez[1][k - 1] >= table.ez[1][k - 2]);
      CHECK(table.ez[2][k - 1] >= table.ez[1][k - 1]);
    }
  }
  CHECK(table.varz2[0] == 0.0);
  CHECK(table.varz2[199] == doctest::Approx(rwalk::varz2(200, 0.4)));
  CHECK(table.gamma_k(10) == doctest::Approx((10.0 + 2.0 * 0.6) / 10.0));
  CHECK(table.gamma_prime_k(10) == doctest::Approx((10.0 + 4.0 * 0.6) / 10.0));
}

TEST_CASE("variance bound: varz2 <= 64 b_4(n) on the grid") {
  for (const double p : {0.3, 0.5, 0.75}) {
    const auto var = rwalk::varz2_table(10000, p);
    for (std::int64_t n = 2; n <= 10000; n = n < 10 ? n + 1 : n * 10 / 7) {
      CHECK(var[n - 1] <= 64.0 * rwalk::b_l(4.0, n, p));
    }
  }
}

TEST_CASE("normalizer ratio E Z_2 / b_n approaches 1") {
  for (const double p : {0.6, 0.75, 0.9}) {
    const double ratio = rwalk::ez(2, 10000, p) / rwalk::bn(10000, p);
    CHECK(std::fabs(ratio - 1.0) <= 0.01);
  }
  const double ratio_half = rwalk::ez(2, 10000, 0.5) / rwalk::bn(10000, 0.5);
  CHECK(std::fabs(ratio_half - 1.0) <= 0.02);
}

TEST_CASE("E Z_l / b_l stays within a stable band over the grid") {
  for (const double p : {0.3, 0.5, 0.75}) {
    for (const int l : {1, 2, 3, 4}) {
      std::vector<double> ratios;
      for (const std::int64_t n : {std::int64_t(100), std::int64_t(1000),
                                   std::int64_t(10000)}) {
        ratios.push_back(rwalk::ez(l, n, p) / rwalk::b_l(l, n, p));
      }
      for (std::size_t i = 1; i < ratios.size(); ++i) {
        const double step = ratios[i] / ratios[i - 1];
        CHECK(step > 0.5);
        CHECK(step < 2.0);
      }
    }
  }
}
