#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "rwalk/cli.hpp"
#include "rwalk/enumeration.hpp"
#include "rwalk/moments.hpp"
#include "rwalk/recursive_tree.hpp"
#include "rwalk/rng.hpp"
#include "rwalk/step_distribution.hpp"
#include "rwalk/walk.hpp"

namespace rwalk {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void push(std::vector<VerifyResult>& out, const std::string& name, bool pass,
          const std::string& detail) {
  out.push_back({name, pass, detail});
}

void check_special_functions(std::vector<VerifyResult>& out) {
  const double half = log_gamma(0.5);
  const double exact_half = 0.5 * std::log(3.14159265358979323846264338327950288);
  const double five = log_gamma(5.0);
  const double exact_five = std::log(24.0);
  bool pass = std::fabs(half - exact_half) <= 1e-13 &&
              std::fabs(log_gamma(1.0)) <= 1e-13 &&
              std::fabs(log_gamma(2.0)) <= 1e-13 &&
              std::fabs(five - exact_five) <= 1e-13 * exact_five;
  push(out, "log_gamma spot values", pass,
       "lgamma(1/2) err " + num(half - exact_half));

  bool euler_ok = true;
  std::string detail = "partial-sum residual within 1e-10";
  try {
    euler_gamma();
  } catch (const std::exception& e) {
    euler_ok = false;
    detail = e.what();
  }
  push(out, "euler gamma partial-sum verification", euler_ok, detail);
}

void check_anl_vs_product(std::vector<VerifyResult>& out) {
  double worst = 0.0;
  for (const double p : {0.3, 0.5, 0.75}) {
    for (const std::int64_t n : {std::int64_t(10), std::int64_t(100),
                                 std::int64_t(10000)}) {
      for (const double l : {1.0, 2.0, 3.0, 4.0}) {
        const double a = l * (1.0 - p);
        double prod = 1.0;
        for (std::int64_t k = 1; k < n; ++k) {
          prod *= (static_cast<double>(k) + a) / static_cast<double>(k);
        }
        const double via_gamma = a_n_l(n, l, p);
        worst = std::max(worst, std::fabs(via_gamma / prod - 1.0));
      }
    }
  }
  push(out, "a_n(l) log-gamma vs direct product", worst <= 1e-10,
       "max relative error " + num(worst));
}

void check_ez_vs_enumeration(std::vector<VerifyResult>& out) {
  double worst_ez = 0.0;
  double worst_var = 0.0;
  for (const double p : {0.25, 0.5, 0.75}) {
    for (std::int64_t n = 1; n <= 8; ++n) {
      const auto oracle = enum_percolation(n, p);
      for (int l = 1; l <= 4; ++l) {
        worst_ez = std::max(worst_ez,
                            std::fabs(ez(l, n, p) - oracle.mean_z[l]));
      }
      worst_var = std::max(worst_var, std::fabs(varz2(n, p) - oracle.var_z[2]));
    }
  }
  push(out, "E Z_l recursion vs exhaustive enumeration (n<=8)",
       worst_ez <= 1e-10, "max abs error " + num(worst_ez));
  push(out, "Var Z_2 recursion vs exhaustive enumeration (n<=8)",
       worst_var <= 1e-10, "max abs error " + num(worst_var));
}

void check_ez2_closed(std::vector<VerifyResult>& out) {
  double worst = 0.0;
  for (const double p : {0.3, 0.5, 0.75, 0.9}) {
    const auto table = ez_table(2, 10000, p);
    for (std::int64_t n = 1; n <= 10000; ++n) {
      const double rec = table[1][n - 1];
      const double closed = ez2_closed(n, p);
      worst = std::max(worst, std::fabs(closed / rec - 1.0));
    }
  }
  push(out, "E Z_2 closed form vs recursion (n<=1e4)", worst <= 1e-9,
       "max relative error " + num(worst));
}

void check_constant_identities(std::vector<VerifyResult>& out) {
  const auto rad = StepDistribution::rademacher();
  const auto two_point = StepDistribution::custom_discrete({0.0, 2.0}, {0.5, 0.5});
  double worst = 0.0;
  for (int i = 1; i <= 99; ++i) {
    const double p = i / 100.0;
    for (const auto* dist : {&rad, &two_point}) {
      const TheoryConstants c = theory_constants(p, *dist);
      worst = std::max(worst, std::fabs(c.residual_checksigma()));
      worst = std::max(worst, std::fabs(c.residual_sigma1()));
    }
  }
  const TheoryConstants c = theory_constants(0.5, rad);
  const bool spot = std::fabs(c.sigma1sq - 5.0 / 18.0) <= 1e-15 &&
                    std::fabs(c.sigma3sq - 1.0 / 252.0) <= 1e-15 &&
                    std::fabs(c.sigma4sq - 23.0 / 84.0) <= 1e-15;
  push(out, "constant identities on p grid", worst <= 1e-12 && spot,
       "max residual " + num(worst));
}

void check_mean_mu(std::vector<VerifyResult>& out) {
  double worst = 0.0;
  for (const double p : {0.25, 0.5, 0.75}) {
    for (std::int64_t n = 1; n <= 8; ++n) {
      const auto oracle = enum_tree_functionals(n, p);
      worst = std::max(worst, std::fabs(exact_mean_mu(n, p) - oracle.mean_mu));
    }
  }
  const double p = 0.35;
  const bool hand = std::fabs(exact_mean_mu(2, p) - 2.0 * p) <= 1e-14 &&
                    std::fabs(exact_mean_mu(3, p) - (p * p + 2.0 * p)) <= 1e-14;
  push(out, "E mu(T_n) formula vs tree enumeration (n<=8)",
       worst <= 1e-12 && hand, "max abs error " + num(worst));
}

void check_delta_law(std::vector<VerifyResult>& out) {
  const auto d2 = enum_delta_pmf(2);
  bool pass = d2.counts.size() == 1 && d2.counts.count(0) == 1;
  const auto d3 = enum_delta_pmf(3);
  pass = pass && d3.counts.at(-1) == 1 && d3.counts.at(1) == 1;
  std::string detail = "k=2 degenerate at 0; ";
  for (std::int64_t k = 3; k <= 8; ++k) {
    const auto dk = enum_delta_pmf(k);
    // Exact integer identity: 3 sum Delta^2 = k (k-1)!.
    pass = pass && 3 * dk.power_sum(2) == k * dk.tree_count;
    pass = pass && dk.power_sum(1) == 0;
    pass = pass && dk.moment(4) <= 6.0 * static_cast<double>(k * k);
  }
  detail += "second moment k/3 exact, fourth moment <= 6k^2 for k<=8";
  push(out, "Delta(T_k) exact law checks", pass, detail);
}

void check_representation(std::vector<VerifyResult>& out) {
  const auto rad = StepDistribution::rademacher();
  const auto two_point = StepDistribution::custom_discrete({0.0, 2.0}, {0.5, 0.5});
  bool pass = true;
  std::uint64_t stream = 0;
  for (const auto* dist : {&rad, &two_point}) {
    for (const double p : {0.3, 0.5, 0.8}) {
      for (const WalkMode mode : {WalkMode::kPositive, WalkMode::kNegative}) {
        for (int rep = 0; rep < 100; ++rep) {
          Rng rng(20240229, stream++);
          const WalkTrace trace = simulate(mode, *dist, p, 200, rng);
          pass = pass && representation_check(trace);
        }
      }
    }
  }
  push(out, "weighted-sum representation coupling (1200 traces)", pass,
       pass ? "all traces match" : "mismatch found");
}

void check_walk_pmf(std::vector<VerifyResult>& out) {
  bool pass = true;
  double worst_mean = 0.0;
  double worst_var = 0.0;
  const auto rad = StepDistribution::rademacher();
  const auto two_point = StepDistribution::custom_discrete({0.0, 2.0}, {0.5, 0.5});
  for (const auto* dist : {&rad, &two_point}) {
    for (const double p : {0.3, 0.5, 0.8}) {
      for (std::int64_t n = 1; n <= 6; ++n) {
        const WalkPmf pos = enum_walk_pmf(n, p, *dist, WalkMode::kPositive);
        pass = pass && std::fabs(pos.total_mass - 1.0) <= 1e-12;
        worst_mean = std::max(
            worst_mean,
            std::fabs(pos.mean - dist->m1() * static_cast<double>(n)));
        worst_var = std::max(
            worst_var,
            std::fabs(pos.variance - dist->sigma0sq() * ez(2, n, p)));
        const WalkPmf neg = enum_walk_pmf(n, p, *dist, WalkMode::kNegative);
        pass = pass && std::fabs(neg.total_mass - 1.0) <= 1e-12;
        const double target = p * dist->m1() / (2.0 - p) * static_cast<double>(n);
        pass = pass && std::fabs(neg.mean - target) <= 2.0;
      }
    }
  }
  pass = pass && worst_mean <= 1e-12 && worst_var <= 1e-10;
  push(out, "walk pmf oracle invariants (n<=6)", pass,
       "mean err " + num(worst_mean) + ", var err " + num(worst_var));
}

}  // namespace

std::vector<VerifyResult> run_verify_suite() {
  std::vector<VerifyResult> out;
  check_special_functions(out);
  check_anl_vs_product(out);
  check_ez_vs_enumeration(out);
  check_ez2_closed(out);
  check_constant_identities(out);
  check_mean_mu(out);
  check_delta_law(out);
  check_representation(out);
  check_walk_pmf(out);
  return out;
}

}  // namespace rwalk
