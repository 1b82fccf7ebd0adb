#include <cmath>
#include <numbers>

#include "doctest.h"
#include "plait/error.hpp"
#include "plait/geometry.hpp"
#include "plait/sine_family.hpp"

using namespace plait;
using std::numbers::pi;

namespace {

Polyline square(double h, bool ccw) {
  std::vector<Point2> v{{-h, -h}, {h, -h}, {h, h}, {-h, h}, {-h, -h}};
  Polyline p(v);
  return ccw ? p : p.reversed();
}

Polyline arc(double r, double a0, double a1, int n) {
  std::vector<Point2> v;
  for (int i = 0; i <= n; ++i) {
    const double a = a0 + (a1 - a0) * i / n;
    v.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return Polyline(v);
}

}  // namespace

TEST_CASE("segment crossing of the axes") {
  auto h = segment_intersect({-1, 0}, {1, 0}, {0, -1}, {0, 1});
  REQUIRE(h);
  CHECK(h->point.x == doctest::Approx(0));
  CHECK(h->point.y == doctest::Approx(0));
  CHECK(h->s == doctest::Approx(0.5));
  CHECK(h->t == doctest::Approx(0.5));
  CHECK_FALSE(h->grazing);
}

TEST_CASE("parallel disjoint segments") {
  CHECK_FALSE(segment_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
}

TEST_CASE("T-junction at an endpoint") {
  auto h = segment_intersect({0, 0}, {2, 0}, {1, 0}, {1, -1});
  REQUIRE(h);
  CHECK(h->point == Point2{1, 0});
  CHECK(h->s == doctest::Approx(0.5));
  CHECK(h->t == 0.0);
}

TEST_CASE("collinear overlap is an error") {
  CHECK_THROWS_AS(segment_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0}), Error);
  try {
    segment_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CollinearOverlap);
  }
  // collinear but only touching end to end
  CHECK(segment_intersect({0, 0}, {1, 0}, {1, 0}, {2, 0}));
}

TEST_CASE("tolerance is relative to segment length") {
  const double k = 1e-11;
  auto h = segment_intersect({-k, 0}, {k, 0}, {0, -k}, {0, k});
  REQUIRE(h);
  CHECK(std::abs(h->point.x) < 1e-20);
  CHECK_FALSE(segment_intersect({0, 0}, {k, 0}, {0, k / 2}, {k, k / 2}));
}

TEST_CASE("sine polyline against the axis") {
  std::vector<Point2> v;
  const int n = 4000;
  for (int i = 0; i <= n; ++i) {
    const double x = 4 * pi * i / n;
    v.push_back({x, std::sin(x)});
  }
  // exact zeros at the sampled multiples of pi
  for (int j = 0; j <= 4; ++j) v[static_cast<std::size_t>(j * n / 4)].y = 0.0;
  const Polyline s(v);
  const Polyline axis(std::vector<Point2>{{-1, 0}, {4 * pi + 1, 0}});
  const auto recs = polyline_intersections(s, axis);
  REQUIRE(recs.size() == 5);
  for (int j = 0; j <= 4; ++j) CHECK(recs[static_cast<std::size_t>(j)].point.x == doctest::Approx(j * pi).epsilon(1e-9));
}

TEST_CASE("disjoint translates do not intersect") {
  const Polyline a = arc(1, 0, pi, 50);
  std::vector<Point2> moved;
  for (const auto& p : a.vertices()) moved.push_back(p + Point2{5, 0});
  CHECK(polyline_intersections(a, Polyline(moved)).empty());
}

TEST_CASE("sampled gamma_0, gamma_1 crossings match the closed-form root count") {
  const SineFamilyParams params{2, 1.0, {-6 * pi, 2 * pi}};
  auto tail = [](const Polyline& p) {
    return Polyline(std::vector<Point2>(p.vertices().begin() + 1, p.vertices().end()));
  };
  const Polyline g0 = tail(sample_gamma(params, 0, 1e-3));
  const Polyline g1 = tail(sample_gamma(params, 1, 1e-3));
  const auto recs = polyline_intersections(g0, g1);
  // gamma_0 meets gamma_1 where Gamma_{0,0} meets Gamma_{1,n} with lift offset 2 pi n, i.e. even delta
  std::size_t roots = 0;
  for (long delta = -4; delta <= 4; delta += 2) {
    roots += solve_lift_intersections(params, 0, 1, delta, params.window).size();
  }
  CHECK(recs.size() == roots);
  CHECK(roots == 9);
}

TEST_CASE("winding numbers of a square") {
  CHECK(winding_number(square(1, true), {0, 0}) == 1);
  CHECK(winding_number(square(1, true), {5, 5}) == 0);
  CHECK(winding_number(square(1, false), {0, 0}) == -1);
  CHECK_THROWS_AS(winding_number(square(1, true), {1, 0}), Error);
}

TEST_CASE("two half circles enclose the origin") {
  const std::vector<Polyline> curves{arc(1, 0, pi, 64), arc(1, pi, 2 * pi, 64)};
  const std::vector<Point2> targets{{0, 0}, {3, 0}};
  const auto enc = enclosure_witnesses(curves, targets);
  REQUIRE(enc.size() == 2);
  CHECK(enc[0].enclosed);
  CHECK(winding_number_raw(enc[0].witness, {0, 0}) != 0);
  CHECK_FALSE(enc[1].enclosed);
  CHECK(enc[1].witness.empty());
}

TEST_CASE("disjoint segments enclose nothing") {
  const std::vector<Polyline> curves{Polyline({{-1, 1}, {1, 1}}), Polyline({{-1, -1}, {1, -1}})};
  const std::vector<Point2> targets{{0, 0}, {5, 5}};
  for (bool b : enclosure_check(curves, targets)) CHECK_FALSE(b);
}

TEST_CASE("crossing segments form a cycle only when closed") {
  // an open zigzag through a box: no bounded face
  const std::vector<Polyline> open{Polyline({{-2, 0}, {2, 0}}), Polyline({{0, -2}, {0, 2}})};
  const std::vector<Point2> t{{0.5, 0.5}};
  CHECK_FALSE(enclosure_check(open, t)[0]);
  // a self-crossing figure-eight style curve closes a loop around its lobe
  const std::vector<Polyline> loop{Polyline({{-2, 0}, {1, 0}, {1, 1}, {0, 1}, {0, -2}})};
  CHECK(enclosure_check(loop, t)[0]);
}

TEST_CASE("a target on a curve is rejected") {
  const std::vector<Polyline> curves{arc(1, 0, pi, 64), arc(1, pi, 2 * pi, 64)};
  const std::vector<Point2> t{{1, 0}};
  CHECK_THROWS_AS(enclosure_check(curves, t), Error);
}

TEST_CASE("clipping outside a disc") {
  const Polyline p({{-2, 0}, {2, 0}});
  const auto pieces = clip_outside_disc(p, {0, 0}, 1);
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0].back().x == doctest::Approx(-1));
  CHECK(pieces[1].front().x == doctest::Approx(1));
  CHECK(clip_outside_disc(Polyline({{0.1, 0}, {0.2, 0}}), {0, 0}, 1).empty());
}

TEST_CASE("polyline validation") {
  CHECK_THROWS_AS(Polyline(std::vector<Point2>{{0, 0}}), Error);
  CHECK_THROWS_AS(Polyline({{0, 0}, {0, 0}}), Error);
  CHECK_THROWS_AS(Polyline({{0, 0}, {NAN, 0}}), Error);
  CHECK(Polyline::from_points({{0, 0}, {0, 0}, {1, 0}}).size() == 2);
}

TEST_CASE("self intersections") {
  CHECK(self_intersections(Polyline({{0, 0}, {1, 0}, {1, 1}, {0.5, -1}})).size() == 1);
  CHECK(self_intersections(square(1, true)).empty());
}
