#include <cmath>
#include <random>

#include "doctest.h"
#include "plait/error.hpp"
#include "plait/substitution.hpp"

using namespace plait;

namespace {

bool inside_any(const std::vector<Rect>& cells, Point2 p) {
  for (const Rect& c : cells) {
    if (c.contains(p, -1e-12 * c.diameter())) return true;
  }
  return false;
}

std::vector<Point2> outside(const Polyline& curve, const std::vector<Rect>& cells) {
  std::vector<Point2> out;
  for (const Point2& v : curve.vertices()) {
    if (!inside_any(cells, v)) out.push_back(v);
  }
  return out;
}

// Every segment pair, no spatial index.
std::size_t brute_crossings(const Polyline& a, const Polyline& b) {
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < a.segment_count(); ++i) {
    for (std::size_t j = 0; j < b.segment_count(); ++j) {
      if (auto h = segment_intersect(a[i], a[i + 1], b[j], b[j + 1])) {
        bool dup = false;
        for (const Point2& q : pts) dup = dup || distance(q, h->point) < 1e-12;
        if (!dup) pts.push_back(h->point);
      }
    }
  }
  return pts.size();
}

}  // namespace

TEST_CASE("contractions") {
  const auto sys = SubstitutionSystem::builtin("nesting");
  const Contraction id = compose(sys, Word{});
  CHECK(id.apply({0.3, -0.4}) == Point2{0.3, -0.4});
  CHECK(compose(sys, Word{1, 1}).ratio() == doctest::Approx(1.0 / 25));
  CHECK(compose(sys, Word{2, 1}).apply({0, 0}).x == doctest::Approx(0.7 + 0.2 * 0.1));
  const auto words = words_of_length(sys, 3);
  REQUIRE(words.size() == 8);
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      CHECK_FALSE(compose(sys, words[i]).image(sys.domain).overlaps(compose(sys, words[j]).image(sys.domain)));
    }
  }
  CHECK_THROWS_AS(Contraction::make({1, 0, 0, 1}, {0, 0}), Error);
  CHECK_THROWS_AS(Contraction::make({0.5, 0.5, 0.5, 0.5}, {0, 0}), Error);
  CHECK(Contraction::make({0, -0.3, 0.3, 0}, {0, 0}).ratio() == doctest::Approx(0.3));
}

TEST_CASE("stage zero is the template") {
  for (auto name : {"nesting", "plaiting"}) {
    const auto sys = SubstitutionSystem::builtin(name);
    const auto st = stage(sys, 0);
    REQUIRE(st.curve.size() == sys.templ.size());
    for (std::size_t i = 0; i < st.curve.size(); ++i) CHECK(st.curve[i] == sys.templ[i]);
    CHECK(st.dirty_regions.size() == 2);
  }
}

TEST_CASE("stabilization outside the dirty regions") {
  for (auto name : {"nesting", "plaiting"}) {
    const auto sys = SubstitutionSystem::builtin(name);
    for (int n = 0; n <= 4; ++n) {
      const auto a = stage(sys, n), b = stage(sys, n + 1);
      CHECK(a.dirty_regions.size() == (std::size_t{1} << (n + 1)));
      CHECK(outside(a.curve, a.dirty_regions) == outside(b.curve, a.dirty_regions));
      // crossings outside the dirty regions persist exactly
      std::vector<Point2> ca, cb;
      for (const auto& r : stage_intersections(sys, a)) if (!inside_any(a.dirty_regions, r.point)) ca.push_back(r.point);
      for (const auto& r : stage_intersections(sys, b)) if (!inside_any(a.dirty_regions, r.point)) cb.push_back(r.point);
      CHECK(ca == cb);
    }
  }
}

TEST_CASE("crossing counts") {
  const auto nest = SubstitutionSystem::builtin("nesting");
  const auto plait = SubstitutionSystem::builtin("plaiting");
  CHECK(stage_intersections(nest, 0).size() == brute_crossings(nest.base, nest.templ));
  CHECK(stage_intersections(nest, 0).size() == 12);
  CHECK(stage_intersections(plait, 0).size() == 8);
  for (int n = 0; n <= 3; ++n) {
    const auto st = stage(nest, n);
    const std::size_t c = stage_intersections(nest, st).size();
    CHECK(c == brute_crossings(nest.base, st.curve));
    // c_0 new crossings in each of the 2^d cells of depth d <= n
    CHECK(c == 12 * ((std::size_t{1} << (n + 1)) - 1));
  }
}

TEST_CASE("crossings are sorted along the base") {
  const auto sys = SubstitutionSystem::builtin("nesting");
  const auto recs = stage_intersections(sys, 2);
  for (std::size_t i = 1; i < recs.size(); ++i) CHECK(recs[i - 1].t_first <= recs[i].t_first);
}

TEST_CASE("stage curves are simple") {
  for (auto name : {"nesting", "plaiting"}) {
    const auto sys = SubstitutionSystem::builtin(name);
    for (int n = 0; n <= 5; ++n) CHECK(self_intersections(stage(sys, n).curve).empty());
  }
}

TEST_CASE("attractor points") {
  const auto sys = SubstitutionSystem::builtin("nesting");
  const auto p1 = attractor_points(sys, 1);
  REQUIRE(p1.size() == 2);
  CHECK(sys.maps[0].image(sys.domain).contains(p1[0]));
  CHECK(sys.maps[1].image(sys.domain).contains(p1[1]));
  for (int d = 1; d <= 5; ++d) {
    const auto pts = attractor_points(sys, d);
    CHECK(pts.size() == (std::size_t{1} << d));
    for (const Word& w : words_of_length(sys, d)) {
      CHECK(compose(sys, w).image(sys.domain).diameter() <= sys.domain.diameter() * std::pow(0.2, d) * (1 + 1e-12));
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) CHECK(distance(pts[i], pts[j]) > 0.0);
  }
  const Point2 ref = sys.reference_point();
  CHECK(distance(sys.maps[0].apply(ref), ref) < 1e-15);
  CHECK(ref.y == 0.0);
}

TEST_CASE("nesting witnesses") {
  const auto nest = SubstitutionSystem::builtin("nesting");
  const auto plait = SubstitutionSystem::builtin("plaiting");
  for (int n = 0; n <= 3; ++n) {
    for (int d = 1; d <= 2; ++d) {
      for (bool b : nesting_witnesses(nest, n, d)) CHECK(b);
      for (bool b : nesting_witnesses(plait, n, d)) CHECK_FALSE(b);
    }
  }
  CHECK_FALSE(nesting_witnesses(nest, 2, 0).at(0));
  const auto cycles = nesting_witness_cycles(nest, stage(nest, 2), 1);
  for (const auto& w : cycles) CHECK(winding_number_raw(w.cycle, w.point) != 0);
}

TEST_CASE("change pattern is the same in every cell") {
  for (auto name : {"nesting", "plaiting"}) {
    const auto sys = SubstitutionSystem::builtin(name);
    const auto patterns = change_patterns(sys, 4);
    REQUIRE(patterns.size() == 4);
    for (const auto& p : patterns) {
      CHECK(p.size() == 1);
      CHECK(p.front().size() == stage_intersections(sys, 0).size());
    }
    CHECK(self_similarity_period(sys, 6) == 1);
  }
}

TEST_CASE("period detector") {
  const std::vector<int> four{3, 1, 4, 1, 3, 1, 4, 1, 3, 1, 4};
  CHECK(detect_period(std::span<const int>(four), 5) == 4);
  const std::vector<int> one(7, 2);
  CHECK(detect_period(std::span<const int>(one), 3) == 1);
  std::mt19937 rng(3);
  std::vector<int> noise;
  for (int i = 0; i < 12; ++i) noise.push_back(static_cast<int>(rng() % 1000));
  CHECK_FALSE(detect_period(std::span<const int>(noise), 6));
}

TEST_CASE("local classification") {
  const auto nest = SubstitutionSystem::builtin("nesting");
  const auto plait = SubstitutionSystem::builtin("plaiting");
  for (int n = 1; n <= 4; ++n) {
    for (const Word& w : {Word{1}, Word{2}, Word{1, 2}}) {
      CHECK(classify_local(nest, stage(nest, n), w).classification == Classification::Nested);
      CHECK(classify_local(plait, stage(plait, n), w).classification == Classification::Plaited);
    }
  }
}

TEST_CASE("system validation") {
  auto sys = SubstitutionSystem::builtin("plaiting");
  SUBCASE("overlapping cells") {
    sys.maps[1] = Contraction::make({0.2, 0, 0, 0.2}, {0.15, 0.0});
    CHECK_THROWS_AS(sys.validate(), Error);
  }
  SUBCASE("port mismatch") {
    std::vector<Point2> v(sys.templ.vertices().begin(), sys.templ.vertices().end());
    v[3].y += 1e-6;
    sys.templ = Polyline(v);
    try {
      sys.validate();
      FAIL("expected SpliceMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SpliceMismatch);
    }
  }
  SUBCASE("a stage that crosses itself") {
    std::vector<Point2> v(sys.templ.vertices().begin(), sys.templ.vertices().end());
    v.insert(v.begin() + 5, Point2{0.2, -0.1});
    sys.templ = Polyline(v);
    sys.ports[1] = {9, 10};
    sys.validate();
    try {
      stage(sys, 1);
      FAIL("expected SelfIntersection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SelfIntersection);
      CHECK(std::string(e.what()).find("cell '1") != std::string::npos);
    }
  }
  SUBCASE("single map") {
    sys.maps.pop_back();
    sys.ports.pop_back();
    sys.validate();
    const auto st = stage(sys, 3);
    CHECK(st.dirty_regions.size() == 1);
    CHECK(attractor_points(sys, 3).size() == 1);
  }
  CHECK_THROWS_AS(SubstitutionSystem::builtin("nope"), Error);
  CHECK_THROWS_AS(stage(SubstitutionSystem::builtin("nesting"), kMaxStage + 1), Error);
}
