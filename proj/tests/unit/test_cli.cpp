#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rwalk/cli.hpp"

using rwalk::ExperimentConfig;

namespace {

// Body of a CSV artifact with the timestamp header comment stripped.
std::string body_of(const std::string& csv) {
  const auto pos = csv.find('\n');
  REQUIRE(pos != std::string::npos);
  REQUIRE(csv.substr(0, 2) == "# ");
  return csv.substr(pos + 1);
}

std::map<std::string, double> parse_key_value_csv(const std::string& body) {
  std::map<std::string, double> out;
  std::istringstream in(body);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    out[line.substr(0, comma)] = std::stod(line.substr(comma + 1));
  }
  return out;
}

std::string run_to_string(const ExperimentConfig& config, int* status = nullptr) {
  std::ostringstream out;
  const int rc = rwalk::run_experiment(config, out);
  if (status) *status = rc;
  return out.str();
}

}  // namespace

TEST_CASE("config parsing reports the offending key") {
  CHECK_THROWS_WITH_AS(
      rwalk::parse_config_json("constants", "{\"distribution\""),
      doctest::Contains("config parse error"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      rwalk::parse_config_json("constants",
                               R"({"distribution":{"kind":"rademacher"}})"),
      doctest::Contains("\"p\""), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      rwalk::parse_config_json(
          "constants",
          R"({"distribution":{"kind":"nope"},"p":0.5})"),
      doctest::Contains("distribution.kind"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      rwalk::parse_config_json(
          "constants",
          R"({"distribution":{"kind":"rademacher"},"p":1.5})"),
      doctest::Contains("\"p\""), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      rwalk::parse_config_json(
          "rate",
          R"({"distribution":{"kind":"rademacher"},"p":0.5,"replicates":1000,"target":"nu1"})"),
      doctest::Contains("n_grid"), std::invalid_argument);
}

TEST_CASE("decimal-string parameters are accepted") {
  const auto c = rwalk::parse_config_json(
      "constants", R"({"distribution":{"kind":"rademacher"},"p":"0.5"})");
  CHECK(c.p == 0.5);
}

TEST_CASE("constants command emits the exact fractions") {
  const auto config = rwalk::parse_config_json(
      "constants", R"({"distribution":{"kind":"rademacher"},"p":0.5})");
  const auto table = parse_key_value_csv(body_of(run_to_string(config)));
  CHECK(table.at("checkb") == 0.0);
  CHECK(table.at("checksigmasq") == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(table.at("sigma1sq") == doctest::Approx(0.277778).epsilon(1e-5));
  CHECK(table.at("sigma3sq") == doctest::Approx(0.003968).epsilon(1e-3));
  CHECK(table.at("sigma4sq") == doctest::Approx(0.273810).epsilon(1e-5));
  CHECK(std::fabs(table.at("residual_checksigma")) < 1e-12);
  CHECK(std::fabs(table.at("residual_sigma1")) < 1e-12);
}

TEST_CASE("moments command final ratio is near 1") {
  const auto config = rwalk::parse_config_json(
      "moments",
      R"({"distribution":{"kind":"rademacher"},"p":0.75,"n":10000})");
  const std::string body = body_of(run_to_string(config));
  std::istringstream in(body);
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,ez2,ez2_closed,bn,ratio");
  std::string last;
  while (std::getline(in, line)) last = line;
  // final row is n = 10000
  std::vector<std::string> fields;
  std::istringstream row(last);
  std::string field;
  while (std::getline(row, field, ',')) fields.push_back(field);
  REQUIRE(fields.size() == 5);
  CHECK(fields[0] == "10000");
  const double ratio = std::stod(fields[4]);
  CHECK(ratio >= 0.99);
  CHECK(ratio <= 1.01);
  const double ez2 = std::stod(fields[1]);
  const double closed = std::stod(fields[2]);
  CHECK(std::fabs(ez2 / closed - 1.0) <= 1e-9);
}

TEST_CASE("enumerate command reproduces hand values") {
  const auto config =
      rwalk::parse_config_json("enumerate", R"({"p":0.5,"n":3})");
  const std::string body = body_of(run_to_string(config));
  std::istringstream in(body);
  std::string line;
  std::getline(in, line);
  CHECK(line == "quantity,index,value");
  bool found_z2 = false;
  bool found_varz2 = false;
  while (std::getline(in, line)) {
    if (line.rfind("mean_z,2,", 0) == 0) {
      CHECK(std::stod(line.substr(9)) == doctest::Approx(5.5).epsilon(1e-12));
      found_z2 = true;
    }
    if (line.rfind("var_z,2,", 0) == 0) {
      CHECK(std::stod(line.substr(8)) == doctest::Approx(4.75).epsilon(1e-12));
      found_varz2 = true;
    }
  }
  CHECK(found_z2);
  CHECK(found_varz2);
}

TEST_CASE("simulate command is deterministic for a fixed seed") {
  const auto config = rwalk::parse_config_json(
      "simulate",
      R"({"distribution":{"kind":"rademacher"},"p":0.5,"mode":"negative","n":50,"seed":7})");
  const std::string a = body_of(run_to_string(config));
  const std::string b = body_of(run_to_string(config));
  CHECK(a == b);
  std::istringstream in(a);
  std::string line;
  std::getline(in, line);
  CHECK(line == "step,eps,choice,step_value,partial_sum");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 50);
}

TEST_CASE("rate command emits rows plus a slope record") {
  auto config = rwalk::parse_config_json(
      "rate",
      R"({"target":"nu1","distribution":{"kind":"rademacher"},"p":0.5,
          "n_grid":[100,200,400],"replicates":1000,"seed":5})");
  config.threads = 2;
  const std::string body = body_of(run_to_string(config));
  CHECK(body.find("n,N,dk,dkw,delta,ratio") != std::string::npos);
  CHECK(body.find("slope,") != std::string::npos);
  // reruns are byte-identical apart from the timestamp header
  CHECK(body == body_of(run_to_string(config)));
}

TEST_CASE("percolation command on a file graph") {
  const std::string path = "test_cli_graph.txt";
  {
    std::ofstream g(path);
    g << "3 2\n1 2\n2 3\n";
  }
  auto config = rwalk::parse_config_json(
      "percolation",
      R"({"graph":"test_cli_graph.txt","ptilde":0.5,"replicates":20000,
          "seed":11,"d_max":2,"sigma2":1.0})");
  config.threads = 2;
  const std::string body = body_of(run_to_string(config));
  std::istringstream in(body);
  std::string line;
  std::getline(in, line);
  CHECK(line == "d,exact_mean,mc_mean,mc_var,stderr,be_bound,constant_free");
  // d=0 row: exact mean 1.25, be_bound sqrt(0.65625)
  std::getline(in, line);
  std::vector<std::string> fields;
  std::istringstream row(line);
  std::string field;
  while (std::getline(row, field, ',')) fields.push_back(field);
  REQUIRE(fields.size() == 7);
  CHECK(std::stod(fields[1]) == doctest::Approx(1.25).epsilon(1e-12));
  const double mc = std::stod(fields[2]);
  const double se = std::stod(fields[4]);
  CHECK(std::fabs(mc - 1.25) <= 4.0 * se);
  CHECK(std::stod(fields[5]) == doctest::Approx(std::sqrt(0.65625)).epsilon(1e-12));
  CHECK(fields[6] == "1");
  std::remove(path.c_str());
}

TEST_CASE("run_cli maps usage errors to exit code 2") {
  const char* missing[] = {"reinforced-walks"};
  CHECK(rwalk::run_cli(1, missing) == 2);
  const char* unknown[] = {"reinforced-walks", "frobnicate", "--config", "x.json"};
  CHECK(rwalk::run_cli(4, unknown) == 2);
  const char* no_config[] = {"reinforced-walks", "constants"};
  CHECK(rwalk::run_cli(2, no_config) == 2);
  const char* bad_flag[] = {"reinforced-walks", "constants", "--flagzor", "1"};
  CHECK(rwalk::run_cli(4, bad_flag) == 2);
}

TEST_CASE("format_real uses 17 significant digits") {
  CHECK(rwalk::format_real(0.5) == "0.5");
  CHECK(rwalk::format_real(1.0 / 3.0) == "0.33333333333333331");
}
