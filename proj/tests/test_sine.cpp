#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "plait/error.hpp"
#include "plait/sine_family.hpp"

using namespace plait;
using std::numbers::pi;

TEST_CASE("lifted points") {
  auto p = lifted_point({3, 1.0}, {0, 0}, 0.0);
  CHECK(p == Point2{0, 0});
  p = lifted_point({3, 1.0}, {0, 1}, 0.0);
  CHECK(p.y == doctest::Approx(pi));
  p = lifted_point({4, 2.0}, {1, 0}, pi / 2);
  CHECK(p.x == doctest::Approx(pi / 2));
  CHECK(std::abs(p.y) < 1e-15);
}

TEST_CASE("translation rule") {
  CHECK(translate_check({3, 1.3}, {2, 4}, 0.7));
  CHECK(translate_check({2, 1.0}, {1, -3}, -2.0));
  CHECK(translate_check({5, 0.0}, {0, 0}, 1.0));
}

TEST_CASE("projection") {
  auto a = project({0, 0});
  CHECK(a.x == doctest::Approx(1));
  auto b = project({0, pi});
  CHECK(b.x == doctest::Approx(-1));
  CHECK(std::abs(b.y) < 1e-15);
  auto c = project({std::log(2.0), pi / 2});
  CHECK(std::abs(c.x) < 1e-15);
  CHECK(c.y == doctest::Approx(2));
}

TEST_CASE("sampling") {
  SUBCASE("zero amplitude lies on the positive axis") {
    const auto g = sample_gamma({4, 0.0, {-3, 2}}, 2, 0.01);
    for (const auto& v : g.vertices()) {
      CHECK(v.y == 0.0);
      CHECK(v.x >= 0.0);
    }
  }
  SUBCASE("starts at the origin and stays in the modulus bound") {
    const auto g = sample_gamma({3, 1.0, {-6 * pi, pi}}, 0, 0.01);
    CHECK(g.front() == Point2{0, 0});
    for (const auto& v : g.vertices()) CHECK(v.norm() <= std::exp(pi + 1));
  }
  SUBCASE("relative image step") {
    const double step = 0.01;
    const auto g = sample_gamma({3, 2.0, {-8 * pi, 4 * pi}}, 1, step);
    for (std::size_t i = 2; i < g.size(); ++i) {
      CHECK(distance(g[i], g[i - 1]) <= step * std::max(g[i].norm(), g[i - 1].norm()) * (1 + 1e-12));
    }
  }
  SUBCASE("budget") {
    CHECK_THROWS_AS(sample_gamma({3, 1.0, {-8 * pi, 4 * pi}}, 0, 1e-3, 1000), Error);
  }
}

TEST_CASE("scaling covariance") {
  for (int n : {2, 3, 5}) {
    const SineFamilyParams p{n, 1.7};
    for (double x : {-20.0, -3.0, 0.0, 1.5, 9.0}) {
      for (int k = 0; k < n; ++k) {
        const Point2 a = std::exp(2 * pi / n) * project(lifted_point(p, {k, 0}, x));
        const Point2 b = project(lifted_point(p, {(k + 1) % n, 0}, x + 2 * pi / n));
        CHECK(distance(a, b) <= 1e-12 * std::max(1.0, b.norm()));
      }
    }
  }
}

TEST_CASE("sampled scaling covariance within two steps") {
  const double step = 0.01;
  const SineFamilyParams p{3, 1.0, {-4 * pi, 2 * pi}};
  const auto g0 = sample_gamma(p, 0, step);
  SineFamilyParams q = p;
  q.window = {p.window.min + 2 * pi / 3, p.window.max + 2 * pi / 3};
  const auto g1 = sample_gamma(q, 1, step);
  const double lam = std::exp(2 * pi / 3);
  // every scaled vertex of g0 is near the polyline g1 (relative to modulus)
  for (std::size_t i = 1; i < g0.size(); i += 7) {
    const Point2 v = lam * g0[i];
    double best = INFINITY;
    for (std::size_t j = 0; j + 1 < g1.size(); ++j) best = std::min(best, point_segment_distance(v, g1[j], g1[j + 1]));
    CHECK(best <= 2 * step * v.norm());
  }
}

TEST_CASE("closed-form roots") {
  SUBCASE("N=2 delta=0") {
    auto r = solve_lift_intersections({2, 1.0}, 0, 1, 0, {-pi / 2, 5 * pi / 2});
    REQUIRE(r.size() == 3);
    for (int j = 0; j < 3; ++j) CHECK(r[static_cast<std::size_t>(j)].x == doctest::Approx(j * pi));
  }
  SUBCASE("tangency") {
    auto r = solve_lift_intersections({2, pi / 2}, 0, 1, 1, {-4 * pi, 4 * pi});
    REQUIRE(r.size() == 4);
    for (const auto& root : r) {
      CHECK(root.tangent);
      const double j = (root.x - pi / 2) / (2 * pi);
      CHECK(j == doctest::Approx(std::round(j)));
    }
  }
  SUBCASE("too small amplitude") {
    CHECK(solve_lift_intersections({3, 0.1}, 0, 1, 1, {-10, 10}).empty());
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(solve_lift_intersections({3, 1.0}, 1, 1, 0, {0, 1}), Error);
    try {
      solve_lift_intersections({2, 0.0}, 0, 1, 0, {0, 1});
      FAIL("expected IdenticalArcs");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IdenticalArcs);
    }
  }
}

TEST_CASE("closed form agrees with a sign scan") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> amp(0.05, 4.0);
  const Window w{-2 * pi, 2 * pi};
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const SineFamilyParams p{n, amp(rng), w};
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          if (k == l) continue;
          for (long d = -2; d <= 2; ++d) {
            const auto roots = solve_lift_intersections(p, k, l, d, w);
            const auto scan = oracle::scan_roots([&](double x) { return lift_residual(p, k, l, d, x); }, w.min, w.max, 1e-3);
            REQUIRE(roots.size() == scan.size());
            for (std::size_t i = 0; i < roots.size(); ++i) CHECK(std::abs(roots[i].x - scan[i]) < 1e-6);
          }
        }
      }
    }
  }
}

TEST_CASE("thresholds") {
  CHECK(plaiting_threshold(2) == pi / 2);
  CHECK(plaiting_threshold(4) == pi / 2);
  CHECK(plaiting_threshold(3) == doctest::Approx(pi / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(plaiting_threshold(3) == doctest::Approx(1.813799364).epsilon(1e-9));
  CHECK_THROWS_AS(plaiting_threshold(1), Error);
}

TEST_CASE("analytic classification") {
  CHECK(classify_analytic({3, 1.0}) == Classification::Plaited);
  CHECK(classify_analytic({3, 3.0}) == Classification::Nested);
  CHECK(classify_analytic({2, pi / 2}) == Classification::Nested);
  CHECK(classify_analytic({2, -1.0}) == Classification::Plaited);
  try {
    classify_analytic({2, 0.0});
    FAIL("expected DegenerateAmplitude");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateAmplitude);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(SineFamilyParams({1, 1.0}).validate(), Error);
  CHECK_THROWS_AS(SineFamilyParams({2, 1.0, {1, 1}}).validate(), Error);
  CHECK_THROWS_AS(SineFamilyParams({2, NAN}).validate(), Error);
}
