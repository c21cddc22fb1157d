#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "abgup/cli.hpp"
#include "abgup/scattering.hpp"

using namespace abgup;

namespace {

constexpr double kPi = std::numbers::pi;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> data_rows(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> r;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) r.push_back(std::stod(cell));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

TEST_CASE("alpha-scan at beta = 0 is the analytic curve") {
  const Run r = run({"alpha-scan", "--phi", "0.7853981633974483", "--beta", "0", "--alpha-min", "0.01", "--alpha-max",
                     "1.99", "--steps", "400"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("alpha_prime,phi,beta,dsigma\n", 0) == 0);
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 400);
  for (const auto& row : rows) {
    const double g = row[0] - std::floor(row[0]);
    const double ref = std::pow(std::sin(kPi * g), 2) / (2 * kPi * std::pow(std::cos(row[1] / 2), 2));
    CHECK(std::abs(row[3] - ref) < 1e-12);
  }
}

TEST_CASE("alpha-scan jumps across alpha' = 1 for beta > 0") {
  const Run r = run({"alpha-scan", "--phi", "0.785398163", "--beta", "0.01", "--alpha-min", "0.01", "--alpha-max", "1.99",
                     "--steps", "400", "--k", "1", "--hbar", "1"});
  REQUIRE(r.code == 0);
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 400);
  double below = 0.0, above = 0.0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    if (rows[i][0] < 1.0 && rows[i + 1][0] > 1.0) {
      below = rows[i][3];
      above = rows[i + 1][3];
    }
  CHECK(above - below > 0.02);
}

TEST_CASE("output does not depend on the worker count") {
  const std::vector<std::string> base{"phi-scan", "--alpha", "2.5", "--beta", "0.008", "--phi-min", "0.05", "--phi-max",
                                      "6.23", "--steps", "500"};
  auto with = [&](const char* n) {
    auto a = base;
    a.push_back("--threads");
    a.push_back(n);
    return run(a).out;
  };
  const std::string one = with("1");
  CHECK(one == with("3"));
  CHECK(one == with("8"));
  CHECK(one == run(base).out);
}

TEST_CASE("singular points are skipped and annotated") {
  Run r = run({"alpha-scan", "--beta", "0.01", "--alpha-min", "0.5", "--alpha-max", "1.5", "--steps", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# skipped alpha_prime=1 ") != std::string::npos);
  CHECK(data_rows(r.out).size() == 2);
  // at beta = 0 integer flux is regular (and zero)
  r = run({"alpha-scan", "--beta", "0", "--alpha-min", "0.5", "--alpha-max", "1.5", "--steps", "3"});
  CHECK(data_rows(r.out).size() == 3);
  r = run({"phi-scan", "--alpha", "0.5", "--phi-min", "3.1", "--phi-max", "3.2", "--steps", "11", "--margin", "0.01"});
  REQUIRE(r.code == 0);
  CHECK(data_rows(r.out).size() == 9);
  r = run({"phi-scan", "--alpha", "0.5", "--phi-min", "3.1", "--phi-max", "3.2", "--steps", "11", "--margin", "0.01",
           "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["rows"].size() == 9);
  CHECK(j["skipped"].size() == 2);
}

TEST_CASE("width subcommand") {
  const Run r = run({"width", "--n", "1", "--phi", "0.7853981633974483", "--beta", "0.01"});
  REQUIRE(r.code == 0);
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 1);
  CHECK(std::abs(rows[0][5] - 0.0222144) < 1e-7);
  CHECK(rows[0][5] == scattering::width(1, kPi / 4, PhysicalParams::natural(0.01)));
}

TEST_CASE("radial and trajectory subcommands") {
  Run r = run({"radial", "--m", "-1", "--alpha", "0.3", "--beta", "0.01", "--z-min", "0.5", "--z-max", "2", "--steps", "4"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("z,m,alpha_prime,re_f0,im_f0,re_f1,im_f1\n", 0) == 0);
  CHECK(data_rows(r.out).size() == 4);
  CHECK(run({"radial", "--m", "0", "--alpha", "1.0"}).code == 1);

  r = run({"trajectory", "--field", "magnetic", "--field-strength", "2", "--x0", "0,0,0", "--p0", "1,0,0", "--steps", "5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("t,x1,x2,x3,v1,v2,v3,energy\n", 0) == 0);
  CHECK(data_rows(r.out).size() == 6);
  r = run({"trajectory", "--beta", "0.01", "--steps", "5", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["samples"].size() == 6);
  CHECK(run({"trajectory", "--x0", "1,2"}).code == 1);
}

TEST_CASE("json output and file output") {
  const std::string path = "abgup_cli_test_out.json";
  const Run r = run({"alpha-scan", "--steps", "10", "--beta", "0.01", "--format", "json", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["rows"].size() == 10);
  CHECK(j["columns"][3] == "dsigma");
  std::remove(path.c_str());
}

TEST_CASE("oracle cross-check") {
  const Run r = run({"phi-scan", "--alpha", "1.3", "--beta", "0.01", "--phi-min", "0.3", "--phi-max", "2.5", "--steps",
                     "5", "--oracle"});
  CHECK(r.code == 0);
}

TEST_CASE("validation failures exit with 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({"alpha-scan", "--nope", "1"}).code == 1);
  CHECK(run({"alpha-scan", "--steps", "1"}).code == 1);
  CHECK(run({"alpha-scan", "--alpha-min", "2", "--alpha-max", "1"}).code == 1);
  CHECK(run({"phi-scan", "--beta", "-0.1"}).code == 1);
  CHECK(run({"phi-scan", "--hbar", "0"}).code == 1);
  CHECK(run({"phi-scan", "--format", "xml"}).code == 1);
  const Run io = run({"width", "--out", "/nonexistent-dir/x.csv"});
  CHECK(io.code == 1);
  CHECK_FALSE(io.err.empty());
}

TEST_CASE("selftest passes") {
  const Run r = run({"selftest"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
