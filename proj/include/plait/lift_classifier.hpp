#pragma once

// Plaited / nested classification of a finite family of sampled arcs that
// share a common endpoint s. Two independent routes:
//
//  * classify_lift: lifts every arc under the exponential map centred at s,
//    reads the integer offset (theta_k - theta_l) / 2 pi at every crossing
//    and asks whether a single integer shift per arc makes all offsets zero.
//  * classify_enclosure: never lifts; deletes a small ball around s and asks
//    the planar arrangement whether some cycle of the union winds around s.

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "plait/geometry.hpp"
#include "plait/sine_family.hpp"

namespace plait {

struct ArcFamily {
  std::vector<Polyline> arcs;
  Point2 common_endpoint;
  // Radius below which the family carries no usable data. Zero means "use
  // the distance from s to the nearest sampled vertex".
  double resolution = 0.0;

  // Throws InvalidArgument unless every arc starts at s and never returns
  // to it.
  void validate() const;
  double effective_resolution() const;
  // Accumulation is certified down to this radius.
  double accumulation_floor() const;
};

// Lift of each arc in (log |z - s|, arg(z - s)) coordinates with a
// continuous argument. base_offsets holds the per-arc integer shifts that
// normalize the offsets (all zero until a classification fills them in).
struct LiftedFamily {
  std::vector<Polyline> lifts;
  std::vector<long> base_offsets;
};

// Drops the endpoint vertex; the argument starts in (-pi, pi] at the second
// vertex and is continued vertex to vertex. Throws ArgumentJump when two
// consecutive vertices subtend an angle of (nearly) pi at s.
Polyline lift_arc(const Polyline& arc, Point2 s);
LiftedFamily lift_family(const ArcFamily& family);

using ArcPair = std::pair<int, int>;

struct OffsetTable {
  // Offsets of every crossing (grazing ones included), keyed by (k, l), k < l.
  std::map<ArcPair, std::set<long>> offsets;
  // Offsets of grazing crossings only.
  std::map<ArcPair, std::set<long>> grazing;
  // Crossings per pair, excluding s, with `offset` populated.
  std::map<ArcPair, std::vector<IntersectionRecord>> records;
};

OffsetTable intersection_offsets(const ArcFamily& family, double tol = kIntersectTol);

struct ClassifierReport {
  Classification classification = Classification::Unlinked;
  std::map<ArcPair, std::vector<long>> offsets;
  std::vector<Point2> witness_cycle;  // non-empty iff nested
  bool marginal = false;
  // Per-arc shifts realizing the normalization (plaited only).
  std::vector<long> normalization;
};

ClassifierReport classify_lift(const ArcFamily& family, double tol = kIntersectTol);
ClassifierReport classify_enclosure(const ArcFamily& family, double tol = kIntersectTol);

inline constexpr double kDefaultClassifyStep = 0.01;

// The quotient arcs of the sine family (see sample_quotient_arc) anchored at
// the origin. Resolution is e^{x_min + 2 pi}: crossings recur once per lift
// period, so no smaller ball is guaranteed to contain one.
ArcFamily make_sine_family(const SineFamilyParams& params, double step = kDefaultClassifyStep);

// Applies z -> scale * e^{i angle} * z + shift to arcs and endpoint.
ArcFamily transform_family(const ArcFamily& family, double scale, double angle, Point2 shift);

}  // namespace plait
