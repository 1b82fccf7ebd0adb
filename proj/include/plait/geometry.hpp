#pragma once

// Planar primitives shared by every other module: points, polylines,
// segment and polyline intersection, winding numbers and the enclosure query
// built on a planar arrangement of polylines.
//
// Tolerances are relative. A tolerance `tol` applied to a pair of segments is
// measured against the longer of the two, so the same default works for
// curves that live at scale 1e-11 near an accumulation point and at 1e5 far
// from it.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace plait {

inline constexpr double kIntersectTol = 1e-9;
inline constexpr double kVertexDedupTol = 1e-12;
// Crossings whose angle is below this are flagged as grazing.
inline constexpr double kGrazingAngle = 1e-6;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2() = default;
  constexpr Point2(double x_, double y_) : x(x_), y(y_) {}

  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
  double norm() const { return std::hypot(x, y); }

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double k, Point2 a) { return {k * a.x, k * a.y}; }
  friend constexpr Point2 operator*(Point2 a, double k) { return {k * a.x, k * a.y}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double distance(Point2 a, Point2 b) { return (a - b).norm(); }

// Distance from p to the closed segment [a, b].
double point_segment_distance(Point2 p, Point2 a, Point2 b);

struct Rect {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double diameter() const { return std::hypot(width(), height()); }
  Point2 center() const { return {(xmin + xmax) / 2, (ymin + ymax) / 2}; }
  bool contains(Point2 p, double slack = 0.0) const {
    return p.x >= xmin - slack && p.x <= xmax + slack && p.y >= ymin - slack &&
           p.y <= ymax + slack;
  }
  bool overlaps(const Rect& o, double slack = 0.0) const {
    return xmin <= o.xmax + slack && o.xmin <= xmax + slack && ymin <= o.ymax + slack &&
           o.ymin <= ymax + slack;
  }
  static Rect bounding(std::span<const Point2> pts);
};

// Ordered vertex list with at least two vertices, no non-finite coordinates
// and no two consecutive vertices closer than kVertexDedupTol (relative to
// their magnitude). Immutable after construction.
class Polyline {
 public:
  explicit Polyline(std::vector<Point2> vertices);

  // Builds a polyline after dropping consecutive near-duplicate vertices.
  static Polyline from_points(std::vector<Point2> pts);

  std::span<const Point2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  std::size_t segment_count() const { return vertices_.size() - 1; }
  const Point2& operator[](std::size_t i) const { return vertices_[i]; }
  const Point2& front() const { return vertices_.front(); }
  const Point2& back() const { return vertices_.back(); }

  double length() const { return cumulative_.back(); }
  // Arc length at vertex i plus fraction s of segment i.
  double arc_length(std::size_t segment, double s) const;
  Point2 point_on_segment(std::size_t segment, double s) const;

  bool closed() const;
  Polyline reversed() const;
  Rect bounds() const { return Rect::bounding(vertices_); }

 private:
  std::vector<Point2> vertices_;
  std::vector<double> cumulative_;
};

struct SegmentHit {
  Point2 point;
  double s = 0.0;  // fraction along the first segment
  double t = 0.0;  // fraction along the second segment
  bool grazing = false;
};

// Transverse crossing or touching point of [p0,p1] and [q0,q1]. Endpoint
// contacts (T-junctions) count. Throws CollinearOverlap when the segments
// share a sub-segment longer than tol.
std::optional<SegmentHit> segment_intersect(Point2 p0, Point2 p1, Point2 q0, Point2 q1,
                                            double tol = kIntersectTol);

struct IntersectionRecord {
  Point2 point;
  double t_first = 0.0;   // arc length on the first curve
  double t_second = 0.0;  // arc length on the second curve
  std::optional<long> offset;
  bool grazing = false;
  // Location as (segment index, fraction); used to split curves.
  std::size_t seg_first = 0;
  double frac_first = 0.0;
  std::size_t seg_second = 0;
  double frac_second = 0.0;
};

// All crossings of p and q sorted by t_first. Hits at a shared polyline
// vertex are reported once.
std::vector<IntersectionRecord> polyline_intersections(const Polyline& p, const Polyline& q,
                                                       double tol = kIntersectTol);

// Crossings of a polyline with itself between non-adjacent segments
// (first and last segment count as adjacent when the polyline is closed).
std::vector<IntersectionRecord> self_intersections(const Polyline& p,
                                                   double tol = kIntersectTol);

// Winding number of a closed polyline about p. Throws PointOnBoundary when p
// is within tol (relative to the loop's extent) of the loop.
int winding_number(const Polyline& loop, Point2 p, double tol = kIntersectTol);

// Unchecked winding number of the closed vertex cycle (last vertex joins the
// first implicitly if they differ).
int winding_number_raw(std::span<const Point2> loop, Point2 p);

struct Enclosure {
  bool enclosed = false;
  // A closed walk of the arrangement (first == last) with nonzero winding
  // about the target; empty when not enclosed.
  std::vector<Point2> witness;
};

// For each target: does the union of the curves contain a closed cycle with
// nonzero winding about it? Curves are split at all mutual and self
// crossings, faces of each connected component are enumerated by the
// rotational sweep and the face walks are tested against the targets.
std::vector<Enclosure> enclosure_witnesses(std::span<const Polyline> curves,
                                           std::span<const Point2> targets,
                                           double tol = kIntersectTol);

std::vector<bool> enclosure_check(std::span<const Polyline> curves,
                                  std::span<const Point2> targets,
                                  double tol = kIntersectTol);

// Parts of the polyline lying outside the open disc of the given radius,
// cut exactly on the circle. Pieces shorter than the dedup tolerance vanish.
std::vector<Polyline> clip_outside_disc(const Polyline& p, Point2 center, double radius);

}  // namespace plait
