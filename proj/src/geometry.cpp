#include "plait/geometry.hpp"

#include <algorithm>
#include <limits>

#include "plait/error.hpp"
#include "segment_tree.hpp"

namespace plait {

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, a);
  const double s = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return distance(p, a + s * d);
}

Rect Rect::bounding(std::span<const Point2> pts) {
  Rect r{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
         -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Point2& p : pts) {
    r.xmin = std::min(r.xmin, p.x);
    r.ymin = std::min(r.ymin, p.y);
    r.xmax = std::max(r.xmax, p.x);
    r.ymax = std::max(r.ymax, p.y);
  }
  return r;
}

namespace {

bool distinct_enough(Point2 a, Point2 b) {
  const double sep = distance(a, b);
  return sep > 0.0 && sep > kVertexDedupTol * std::max(a.norm(), b.norm());
}

}  // namespace

Polyline::Polyline(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw Error(ErrorCode::InvalidArgument, "polyline needs at least two vertices");
  cumulative_.reserve(vertices_.size());
  cumulative_.push_back(0.0);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!vertices_[i].finite()) throw Error(ErrorCode::InvalidArgument, "polyline vertex is not finite");
    if (i == 0) continue;
    if (!distinct_enough(vertices_[i - 1], vertices_[i])) {
      throw Error(ErrorCode::InvalidArgument,
                  "consecutive polyline vertices coincide at index " + std::to_string(i));
    }
    cumulative_.push_back(cumulative_.back() + distance(vertices_[i - 1], vertices_[i]));
  }
}

Polyline Polyline::from_points(std::vector<Point2> pts) {
  std::vector<Point2> kept;
  kept.reserve(pts.size());
  for (const Point2& p : pts) {
    if (kept.empty() || distinct_enough(kept.back(), p)) kept.push_back(p);
  }
  return Polyline(std::move(kept));
}

double Polyline::arc_length(std::size_t segment, double s) const {
  return cumulative_[segment] + s * (cumulative_[segment + 1] - cumulative_[segment]);
}

Point2 Polyline::point_on_segment(std::size_t segment, double s) const {
  return vertices_[segment] + s * (vertices_[segment + 1] - vertices_[segment]);
}

bool Polyline::closed() const {
  const double scale = std::max(front().norm(), back().norm());
  return distance(front(), back()) <= kVertexDedupTol * std::max(1.0, scale);
}

Polyline Polyline::reversed() const {
  std::vector<Point2> v(vertices_.rbegin(), vertices_.rend());
  return Polyline(std::move(v));
}

std::optional<SegmentHit> segment_intersect(Point2 p0, Point2 p1, Point2 q0, Point2 q1, double tol) {
  const Point2 r = p1 - p0;
  const Point2 u = q1 - q0;
  const double lr = r.norm();
  const double lu = u.norm();
  if (lr == 0.0 || lu == 0.0) throw Error(ErrorCode::InvalidArgument, "degenerate segment");
  const double scale = std::max(lr, lu);
  const double abs_tol = tol * scale;
  const Point2 w = q0 - p0;
  const double denom = cross(r, u);
  const double sin_angle = denom / (lr * lu);

  if (std::abs(sin_angle) <= tol) {
    // Parallel: either disjoint, touching end to end, or overlapping.
    if (std::abs(cross(r, w)) / lr > abs_tol) return std::nullopt;
    const double a = dot(w, r) / (lr * lr);
    const double b = dot(q1 - p0, r) / (lr * lr);
    const double lo = std::max(0.0, std::min(a, b));
    const double hi = std::min(1.0, std::max(a, b));
    const double par_tol = abs_tol / lr;
    if (hi < lo - par_tol) return std::nullopt;
    if ((hi - lo) * lr > abs_tol) {
      throw Error(ErrorCode::CollinearOverlap, "segments overlap along a shared sub-segment");
    }
    const double s = std::clamp((lo + hi) / 2, 0.0, 1.0);
    const Point2 pt = p0 + s * r;
    const double t = std::clamp(dot(pt - q0, u) / (lu * lu), 0.0, 1.0);
    return SegmentHit{pt, s, t, true};
  }

  const double s = cross(w, u) / denom;
  const double t = cross(w, r) / denom;
  const double s_tol = abs_tol / lr;
  const double t_tol = abs_tol / lu;
  if (s < -s_tol || s > 1 + s_tol || t < -t_tol || t > 1 + t_tol) return std::nullopt;
  const double sc = std::clamp(s, 0.0, 1.0);
  const double tc = std::clamp(t, 0.0, 1.0);
  SegmentHit hit;
  hit.s = sc;
  hit.t = tc;
  // Snap endpoint contacts onto the endpoint itself so T-junctions are exact.
  if (tc == 0.0 || tc == 1.0) {
    hit.point = q0 + tc * u;
  } else {
    hit.point = p0 + sc * r;
  }
  hit.grazing = std::abs(sin_angle) < std::sin(kGrazingAngle);
  return hit;
}

namespace {

struct RawHit {
  std::size_t i;
  double s;
  std::size_t j;
  double t;
  SegmentHit hit;
};

// Moves a hit sitting at the end of a segment onto the start of the next one
// so that the same vertex contact has a single representation.
void canonicalize(std::size_t& seg, double& frac, std::size_t segment_count) {
  if (frac >= 1.0 - 1e-12 && seg + 1 < segment_count) {
    ++seg;
    frac = 0.0;
  }
}

std::vector<IntersectionRecord> finish_records(std::vector<RawHit>& raw, const Polyline& p,
                                               const Polyline& q) {
  for (RawHit& h : raw) {
    canonicalize(h.i, h.s, p.segment_count());
    canonicalize(h.j, h.t, q.segment_count());
  }
  std::sort(raw.begin(), raw.end(), [](const RawHit& a, const RawHit& b) {
    if (a.i != b.i) return a.i < b.i;
    if (a.s != b.s) return a.s < b.s;
    if (a.j != b.j) return a.j < b.j;
    return a.t < b.t;
  });
  std::vector<IntersectionRecord> out;
  constexpr double kSameParam = 1e-9;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    bool dup = false;
    for (std::size_t m = k; m-- > 0;) {
      const RawHit& a = raw[m];
      if (a.i != raw[k].i || raw[k].s - a.s > kSameParam) break;
      if (a.j == raw[k].j && std::abs(a.t - raw[k].t) <= kSameParam) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    const RawHit& h = raw[k];
    IntersectionRecord rec;
    rec.point = h.hit.point;
    rec.seg_first = h.i;
    rec.frac_first = h.s;
    rec.seg_second = h.j;
    rec.frac_second = h.t;
    rec.t_first = p.arc_length(h.i, h.s);
    rec.t_second = q.arc_length(h.j, h.t);
    rec.grazing = h.hit.grazing;
    out.push_back(rec);
  }
  // Parameter duplicates from the shared-vertex case can still differ in
  // order only; sort and drop exact repeats of the arc-length pair.
  std::sort(out.begin(), out.end(), [](const IntersectionRecord& a, const IntersectionRecord& b) {
    return a.t_first < b.t_first || (a.t_first == b.t_first && a.t_second < b.t_second);
  });
  return out;
}

}  // namespace

std::vector<IntersectionRecord> polyline_intersections(const Polyline& p, const Polyline& q, double tol) {
  const detail::SegmentTree tp(p.vertices());
  const detail::SegmentTree tq(q.vertices());
  std::vector<RawHit> raw;
  detail::for_each_candidate_pair(tp, tq, tol, [&](std::size_t i, std::size_t j) {
    if (auto hit = segment_intersect(p[i], p[i + 1], q[j], q[j + 1], tol)) {
      raw.push_back({i, hit->s, j, hit->t, *hit});
    }
  });
  return finish_records(raw, p, q);
}

std::vector<IntersectionRecord> self_intersections(const Polyline& p, double tol) {
  const detail::SegmentTree tp(p.vertices());
  const std::size_t n = p.segment_count();
  const bool closed = p.closed();
  std::vector<RawHit> raw;
  detail::for_each_candidate_pair(tp, tp, tol, [&](std::size_t i, std::size_t j) {
    if (j <= i + 1) return;
    if (closed && i == 0 && j == n - 1) return;
    if (auto hit = segment_intersect(p[i], p[i + 1], p[j], p[j + 1], tol)) {
      raw.push_back({i, hit->s, j, hit->t, *hit});
    }
  });
  return finish_records(raw, p, p);
}

int winding_number_raw(std::span<const Point2> loop, Point2 p) {
  int wn = 0;
  const std::size_t n = loop.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point2 a = loop[k];
    const Point2 b = loop[(k + 1) % n];
    if (a == b) continue;
    const double side = cross(b - a, p - a);
    if (a.y <= p.y) {
      if (b.y > p.y && side > 0) ++wn;
    } else {
      if (b.y <= p.y && side < 0) --wn;
    }
  }
  return wn;
}

int winding_number(const Polyline& loop, Point2 p, double tol) {
  if (!loop.closed()) throw Error(ErrorCode::InvalidArgument, "winding number needs a closed loop");
  const double scale = std::max(loop.bounds().diameter(), std::numeric_limits<double>::min());
  for (std::size_t i = 0; i < loop.segment_count(); ++i) {
    if (point_segment_distance(p, loop[i], loop[i + 1]) <= tol * scale) {
      throw Error(ErrorCode::PointOnBoundary, "point lies on the loop");
    }
  }
  return winding_number_raw(loop.vertices(), p);
}

std::vector<Polyline> clip_outside_disc(const Polyline& p, Point2 center, double radius) {
  std::vector<Polyline> pieces;
  std::vector<Point2> current;
  auto flush = [&] {
    if (current.size() >= 2) {
      std::vector<Point2> kept;
      for (const Point2& v : current) {
        if (kept.empty() || distinct_enough(kept.back(), v)) kept.push_back(v);
      }
      if (kept.size() >= 2) pieces.emplace_back(std::move(kept));
    }
    current.clear();
  };
  const double r2 = radius * radius;
  auto outside = [&](Point2 v) { return dot(v - center, v - center) >= r2; };

  if (outside(p[0])) current.push_back(p[0]);
  for (std::size_t i = 0; i < p.segment_count(); ++i) {
    const Point2 a = p[i];
    const Point2 d = p[i + 1] - a;
    const Point2 f = a - center;
    // |f + t d|^2 = r^2
    const double A = dot(d, d);
    const double B = 2 * dot(f, d);
    const double C = dot(f, f) - r2;
    const double disc = B * B - 4 * A * C;
    std::vector<double> roots;
    if (disc > 0) {
      const double sq = std::sqrt(disc);
      // Numerically stable pair of roots.
      const double qq = -0.5 * (B + (B >= 0 ? sq : -sq));
      double t1 = qq / A;
      double t2 = qq != 0 ? C / qq : t1;
      if (t1 > t2) std::swap(t1, t2);
      for (double t : {t1, t2}) {
        if (t > 0 && t < 1) roots.push_back(t);
      }
    }
    for (double t : roots) {
      const Point2 x = a + t * d;
      if (!current.empty()) {
        current.push_back(x);
        flush();
      } else {
        current.push_back(x);
      }
    }
    const Point2 b = p[i + 1];
    if (outside(b)) {
      current.push_back(b);
    } else if (!current.empty()) {
      flush();
    }
  }
  flush();
  return pieces;
}

}  // namespace plait
