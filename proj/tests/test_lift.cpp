#include <cmath>
#include <numbers>

#include "doctest.h"
#include "plait/error.hpp"
#include "plait/lift_classifier.hpp"

using namespace plait;
using std::numbers::pi;

namespace {

ArcFamily rays(int n) {
  ArcFamily f;
  for (int k = 0; k < n; ++k) {
    const double a = 2 * pi * k / n;
    f.arcs.push_back(Polyline({{0, 0}, {0.5 * std::cos(a), 0.5 * std::sin(a)}, {std::cos(a), std::sin(a)}}));
  }
  return f;
}

// Per-arc 2 pi shift between the computed lift and 2 Gamma_{k,0}.
long lift_shift(const ArcFamily& f, const SineFamilyParams& p, int k) {
  const Polyline lift = lift_arc(f.arcs[static_cast<std::size_t>(k)], f.common_endpoint);
  const double want = 2 * lifted_point(p, {k, 0}, p.window.min).y;
  return std::lround((lift[0].y - want) / (2 * pi));
}

}  // namespace

TEST_CASE("lift of a positive real segment") {
  const Polyline l = lift_arc(Polyline({{0, 0}, {0.5, 0}, {1, 0}}), {0, 0});
  REQUIRE(l.size() == 2);
  CHECK(l[0].y == 0.0);
  CHECK(l[1].y == 0.0);
  CHECK(l[1].x == doctest::Approx(0.0));
}

TEST_CASE("lift of sampled gamma recovers Gamma_{k,0}") {
  const SineFamilyParams p{3, 1.0, {-6 * pi, pi}};
  for (int k = 0; k < 3; ++k) {
    const Polyline g = sample_gamma(p, k, 0.01);
    const Polyline l = lift_arc(g, {0, 0});
    const double shift = std::round((l[0].y - lifted_point(p, {k, 0}, l[0].x).y) / (2 * pi)) * 2 * pi;
    for (std::size_t i = 0; i < l.size(); ++i) {
      const Point2 want = lifted_point(p, {k, 0}, l[i].x);
      CHECK(std::abs(l[i].y - shift - want.y) < 1e-9);
      CHECK(distance(project(l[i]), g[i + 1]) <= 1e-9 * g[i + 1].norm());
    }
  }
}

TEST_CASE("lift of a spiral") {
  std::vector<Point2> v{{0, 0}};
  for (int i = 0; i <= 100; ++i) {
    const double t = 2 * pi * i / 100;
    v.push_back({(1 + t) * std::cos(t), (1 + t) * std::sin(t)});
  }
  const Polyline l = lift_arc(Polyline(v), {0, 0});
  CHECK(l.back().y - l.front().y == doctest::Approx(2 * pi));
}

TEST_CASE("argument jump") {
  try {
    lift_arc(Polyline({{0, 0}, {1, 0}, {-1, 1e-14}}), {0, 0});
    FAIL("expected ArgumentJump");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ArgumentJump);
  }
}

TEST_CASE("family validation") {
  ArcFamily f = rays(2);
  f.common_endpoint = {1, 1};
  CHECK_THROWS_AS(f.validate(), Error);
  ArcFamily g;
  g.arcs.push_back(Polyline({{0, 0}, {1, 0}, {0, 0}}));
  CHECK_THROWS_AS(g.validate(), Error);
}

TEST_CASE("offsets on the sine family") {
  SUBCASE("below threshold: a single offset") {
    const auto t = intersection_offsets(make_sine_family({2, 1.0}));
    CHECK(t.offsets.at({0, 1}).size() == 1);
  }
  SUBCASE("above threshold: at least two offsets") {
    const auto t = intersection_offsets(make_sine_family({2, 2.0}));
    CHECK(t.offsets.at({0, 1}).size() >= 2);
  }
  SUBCASE("rays meeting only at s") {
    const auto t = intersection_offsets(rays(3));
    for (const auto& [pair, set] : t.offsets) CHECK(set.empty());
  }
}

TEST_CASE("geometric offsets match the solver's deltas") {
  for (int n : {2, 3, 4}) {
    for (double a : {0.8, 2.5, 4.5}) {
      const SineFamilyParams p{n, a};
      const ArcFamily f = make_sine_family(p);
      const auto t = intersection_offsets(f);
      for (const auto& [pair, set] : t.offsets) {
        const long shift = lift_shift(f, p, pair.first) - lift_shift(f, p, pair.second);
        std::set<long> geo;
        for (long m : set) geo.insert(m - shift);
        std::set<long> solved;
        for (long d = -kDefaultDeltaMax; d <= kDefaultDeltaMax; ++d) {
          if (!solve_lift_intersections(p, pair.first, pair.second, d, p.window).empty()) solved.insert(d);
        }
        CHECK_MESSAGE(geo == solved, "N=" << n << " a=" << a << " pair " << pair.first << "," << pair.second);
      }
    }
  }
}

TEST_CASE("lift classification") {
  CHECK(classify_lift(rays(3)).classification == Classification::Unlinked);
  CHECK(classify_lift(make_sine_family({3, 1.0})).classification == Classification::Plaited);
  const auto nested = classify_lift(make_sine_family({3, 3.0}));
  CHECK(nested.classification == Classification::Nested);
  REQUIRE(!nested.witness_cycle.empty());
  CHECK(winding_number_raw(nested.witness_cycle, {0, 0}) != 0);
  const auto plaited = classify_lift(make_sine_family({2, 1.0}));
  CHECK(plaited.classification == Classification::Plaited);
  CHECK(plaited.witness_cycle.empty());
  CHECK(plaited.normalization.size() == 2);
}

TEST_CASE("enclosure classification") {
  CHECK(classify_enclosure(rays(3)).classification == Classification::Unlinked);
  const auto nested = classify_enclosure(make_sine_family({2, 2.0}));
  CHECK(nested.classification == Classification::Nested);
  REQUIRE(!nested.witness_cycle.empty());
  CHECK(winding_number_raw(nested.witness_cycle, {0, 0}) != 0);
  CHECK(classify_enclosure(make_sine_family({2, 1.0})).classification == Classification::Plaited);
}

TEST_CASE("union of the two arcs bounds a disc around 0 above threshold") {
  const ArcFamily f = make_sine_family({2, 2.0});
  // drop a tiny ball so the common endpoint is not on the curves
  std::vector<Polyline> curves;
  for (const auto& a : f.arcs) {
    for (auto& piece : clip_outside_disc(a, {0, 0}, 1e-3)) curves.push_back(piece);
  }
  const std::vector<Point2> t{{0, 0}};
  CHECK(enclosure_check(curves, t)[0]);
}

TEST_CASE("rotation and scale equivariance") {
  for (double a : {1.0, 3.0}) {
    const ArcFamily f = make_sine_family({3, a});
    const ArcFamily g = transform_family(f, 2.5, 0.7, {0.0, 0.0});
    const ArcFamily h = transform_family(f, 1e-3, -2.0, {4.0, -1.0});
    const auto rf = classify_lift(f), rg = classify_lift(g), rh = classify_lift(h);
    CHECK(rf.classification == rg.classification);
    CHECK(rf.classification == rh.classification);
    CHECK(classify_enclosure(g).classification == rf.classification);
    // the argument origin moves with the rotation, so compare up to a per-arc shift
    for (const auto& [pair, offs] : rf.offsets) {
      CHECK(offs.size() == rg.offsets.at(pair).size());
      CHECK(offs.back() - offs.front() == rg.offsets.at(pair).back() - rg.offsets.at(pair).front());
    }
  }
}

TEST_CASE("offset antisymmetry") {
  const ArcFamily f = make_sine_family({3, 3.0});
  ArcFamily swapped = f;
  std::swap(swapped.arcs[0], swapped.arcs[1]);
  const auto a = intersection_offsets(f).offsets.at({0, 1});
  const auto b = intersection_offsets(swapped).offsets.at({0, 1});
  std::set<long> neg;
  for (long m : a) neg.insert(-m);
  CHECK(neg == b);
}

TEST_CASE("classifiers agree where cuts straddle a sampled vertex") {
  for (double m : {0.9, 2.0, 4.0}) {
    const ArcFamily f = make_sine_family({5, m * plaiting_threshold(5)});
    const auto want = m < 1 ? Classification::Plaited : Classification::Nested;
    CHECK(classify_enclosure(f).classification == want);
    CHECK(classify_lift(f).classification == want);
  }
}
