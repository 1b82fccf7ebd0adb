#include <cmath>
#include <numbers>
#include <regex>

#include "doctest.h"
#include "plait/error.hpp"
#include "plait/verify.hpp"

using namespace plait;

TEST_CASE("every suite passes") {
  for (const auto& suite : verify_suite_names()) {
    const auto r = run_verify(suite);
    CHECK_MESSAGE(r.failures() == 0, verify_json(r).dump(2));
    CHECK(r.cases.size() >= 5);
  }
}

TEST_CASE("onset bisection") {
  CHECK(nesting_onset(2) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-10));
  CHECK(nesting_onset(3) == doctest::Approx(std::numbers::pi / std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("a corrupted threshold is caught near a*") {
  VerifyOptions opts;
  opts.threshold = [](int n) { return plaiting_threshold(n) * 1.05; };
  const auto r = run_verify("sine", opts);
  CHECK(r.failures() > 0);
  const auto c = run_verify("classifier", opts);
  bool found = false;
  for (const auto& tc : c.cases) {
    if (tc.name != "lift_flips_at_threshold") continue;
    REQUIRE_FALSE(tc.passed);
    std::smatch m;
    const std::regex re(R"(N=(\d+) a=([0-9.eE+-]+))");
    REQUIRE(std::regex_search(tc.counterexample, m, re));
    const int n = std::stoi(m[1]);
    const double a = std::stod(m[2]);
    CHECK(std::abs(a - plaiting_threshold(n)) < 0.1 * plaiting_threshold(n));
    found = true;
  }
  CHECK(found);
}

TEST_CASE("json shape and seed") {
  VerifyOptions opts;
  opts.seed = 99;
  const auto j = verify_json(run_verify("sine", opts));
  CHECK(j["seed"] == 99);
  CHECK(j["tests"] == j["testcases"].size());
  CHECK(j["failures"] == 0);
  CHECK_THROWS_AS(run_verify("bogus"), Error);
}
