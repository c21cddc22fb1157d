#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "abgup/io.hpp"

using namespace abgup;
using namespace abgup::io;

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("scan csv") {
  std::vector<ScanEntry> rows(3);
  rows[0] = {0.5, 0.25, 0.01, 0.125, ""};
  rows[1] = {1.0, 0.25, 0.01, std::nullopt, "within 1e-4 of integer alpha_prime"};
  rows[2] = {1.5, 0.25, 0.01, 0.5, ""};
  std::ostringstream os;
  write_scan_csv(os, rows);
  CHECK(os.str() ==
        "alpha_prime,phi,beta,dsigma\n"
        "0.5,0.25,0.01,0.125\n"
        "# skipped alpha_prime=1 phi=0.25 (within 1e-4 of integer alpha_prime)\n"
        "1.5,0.25,0.01,0.5\n");
  const auto j = scan_to_json(rows);
  CHECK(j["rows"].size() == 2);
  CHECK(j["skipped"].size() == 1);
  CHECK(j["skipped"][0]["alpha_prime"] == 1.0);
}

TEST_CASE("radial and width csv headers") {
  std::ostringstream a, b;
  write_radial_csv(a, {{0.5, -1, 0.3, {1, 2}, {3, 4}}});
  CHECK(a.str() == "z,m,alpha_prime,re_f0,im_f0,re_f1,im_f1\n0.5,-1,0.29999999999999999,1,2,3,4\n");
  write_width_csv(b, {{1, 0.5, 0.01, 0.25, 0.125, 0.125}});
  CHECK(b.str() == "n,phi,beta,upper,lower,width\n1,0.5,0.01,0.25,0.125,0.125\n");
  CHECK(radial_to_json({{0.5, -1, 0.3, {1, 2}, {3, 4}}})[0]["im_f1"] == 4.0);
  CHECK(width_to_json({{1, 0.5, 0.01, 0.25, 0.125, 0.125}})[0]["n"] == 1);
}

TEST_CASE("amplitude json round trip") {
  std::vector<scattering::ScatterSample> rows;
  for (int i = 0; i < 10; ++i) {
    scattering::ScatterSample s;
    s.alpha_prime = 0.1 + 0.27 * i;
    s.phi = -2.0 + 0.4 * i;
    s.beta = 0.001 * i;
    s.f0 = {1.0 / (i + 3.0), -0.1 * i};
    s.f1 = {std::sqrt(2.0) * i, 1e-17 * i};
    s.dsigma = 1.0 / 7.0 + i;
    rows.push_back(s);
  }
  const auto back = parse_amplitudes(dump_amplitudes(rows));
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].alpha_prime == rows[i].alpha_prime);
    CHECK(back[i].phi == rows[i].phi);
    CHECK(back[i].beta == rows[i].beta);
    CHECK(back[i].f0 == rows[i].f0);
    CHECK(back[i].f1 == rows[i].f1);
    CHECK(back[i].dsigma == rows[i].dsigma);
  }
  CHECK_THROWS_AS(parse_amplitudes("{\"a\": 1}"), DomainError);
  CHECK_THROWS(parse_amplitudes("[{\"alpha_prime\": 1}]"));
}
