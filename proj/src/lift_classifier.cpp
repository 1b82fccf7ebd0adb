#include "plait/lift_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <queue>

#include "plait/error.hpp"

namespace plait {

using std::numbers::pi;

void ArcFamily::validate() const {
  if (arcs.size() < 2) throw Error(ErrorCode::InvalidArgument, "an arc family needs at least two arcs");
  const double end_tol = 1e-12 * std::max(1.0, common_endpoint.norm());
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const Polyline& a = arcs[k];
    if (distance(a.front(), common_endpoint) > end_tol) {
      throw Error(ErrorCode::InvalidArgument, "arc " + std::to_string(k) + " does not start at the common endpoint");
    }
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (distance(a[i], common_endpoint) <= 1e-12) {
        throw Error(ErrorCode::InvalidArgument, "arc " + std::to_string(k) + " vertex " + std::to_string(i) +
                                                    " lies within 1e-12 of the common endpoint");
      }
    }
  }
}

double ArcFamily::effective_resolution() const {
  if (resolution > 0) return resolution;
  double r = INFINITY;
  for (const Polyline& a : arcs) r = std::min(r, distance(a[1], common_endpoint));
  return r;
}

double ArcFamily::accumulation_floor() const { return std::max(1e-9, 10 * effective_resolution()); }

namespace {

double principal_diff(double a, double b) {
  double d = a - b;
  while (d > pi) d -= 2 * pi;
  while (d <= -pi) d += 2 * pi;
  return d;
}

double arg_about(Point2 p, Point2 s) { return std::atan2(p.y - s.y, p.x - s.x); }

// Continuous argument of the arc at a point lying on segment `seg`.
double theta_at(const Polyline& arc, const std::vector<double>& lift, Point2 s, std::size_t seg, Point2 p) {
  // Vertex v of the arc corresponds to lift vertex v - 1; segment 0 is the
  // radial piece leaving s, whose argument equals that of vertex 1.
  const std::size_t v = std::max<std::size_t>(seg, 1);
  const double base = lift[v - 1];
  return base + principal_diff(arg_about(p, s), arg_about(arc[v], s));
}

bool at_endpoint(const IntersectionRecord& r, const ArcFamily& f, std::size_t k, std::size_t l) {
  const Point2 s = f.common_endpoint;
  const double near = std::min(distance(f.arcs[k][1], s), distance(f.arcs[l][1], s));
  return distance(r.point, s) <= 1e-9 * near;
}

// Crossings of two arcs sharing their first vertex. The two segments at the
// shared vertex are never tested against each other: arcs leaving along the
// same ray would report a collinear overlap there.
std::vector<IntersectionRecord> crossings_off_endpoint(const Polyline& a, const Polyline& b, double tol) {
  auto tail = [](const Polyline& p) -> std::optional<Polyline> {
    if (p.size() < 3) return std::nullopt;
    return Polyline(std::vector<Point2>(p.vertices().begin() + 1, p.vertices().end()));
  };
  auto head = [](const Polyline& p) { return Polyline(std::vector<Point2>{p[0], p[1]}); };
  const auto ta = tail(a), tb = tail(b);
  std::vector<IntersectionRecord> out;
  auto add = [&](const Polyline& x, std::size_t dx, const Polyline& y, std::size_t dy) {
    for (IntersectionRecord r : polyline_intersections(x, y, tol)) {
      r.seg_first += dx;
      r.seg_second += dy;
      r.t_first = a.arc_length(r.seg_first, r.frac_first);
      r.t_second = b.arc_length(r.seg_second, r.frac_second);
      out.push_back(r);
    }
  };
  if (ta && tb) add(*ta, 1, *tb, 1);
  if (tb) add(head(a), 0, *tb, 1);
  if (ta) add(*ta, 1, head(b), 0);
  std::sort(out.begin(), out.end(), [](const IntersectionRecord& x, const IntersectionRecord& y) {
    return x.t_first < y.t_first || (x.t_first == y.t_first && x.t_second < y.t_second);
  });
  // a hit at the junction of head and tail shows up twice
  out.erase(std::unique(out.begin(), out.end(),
                        [](const IntersectionRecord& x, const IntersectionRecord& y) {
                          return distance(x.point, y.point) <= kVertexDedupTol * std::max(1.0, x.point.norm());
                        }),
            out.end());
  return out;
}

// Crossings of every pair except the shared endpoint.
std::map<ArcPair, std::vector<IntersectionRecord>> pair_crossings(const ArcFamily& f, double tol) {
  std::map<ArcPair, std::vector<IntersectionRecord>> out;
  for (std::size_t k = 0; k < f.arcs.size(); ++k) {
    for (std::size_t l = k + 1; l < f.arcs.size(); ++l) {
      auto& list = out[{static_cast<int>(k), static_cast<int>(l)}];
      for (const IntersectionRecord& r : crossings_off_endpoint(f.arcs[k], f.arcs[l], tol)) {
        if (!at_endpoint(r, f, k, l)) list.push_back(r);
      }
    }
  }
  return out;
}

bool any_pair_unlinked(const std::map<ArcPair, std::vector<IntersectionRecord>>& crossings) {
  return std::any_of(crossings.begin(), crossings.end(), [](const auto& kv) { return kv.second.empty(); });
}

// Every pair must have a crossing inside each ball of radius rho_0 2^{-j}
// about s, for all radii down to the accumulation floor.
bool accumulates(const ArcFamily& f, const std::map<ArcPair, std::vector<IntersectionRecord>>& crossings) {
  const Point2 s = f.common_endpoint;
  double rho0 = 0.0;
  for (const Polyline& a : f.arcs) {
    for (const Point2& v : a.vertices()) rho0 = std::max(rho0, distance(v, s));
  }
  const double floor = f.accumulation_floor();
  for (const auto& [pair, recs] : crossings) {
    double nearest = INFINITY;
    for (const IntersectionRecord& r : recs) nearest = std::min(nearest, distance(r.point, s));
    if (!std::isfinite(nearest)) return false;
    for (double rho = rho0; rho >= floor; rho /= 2) {
      if (nearest > rho) return false;
    }
  }
  return true;
}

struct Location {
  std::size_t seg;
  double frac;
  Point2 point;
};

bool before(const Location& a, const Location& b) {
  return a.seg < b.seg || (a.seg == b.seg && a.frac < b.frac);
}

// Portion of the arc between two locations, oriented from `from` to `to`.
std::vector<Point2> sub_arc(const Polyline& arc, Location from, Location to) {
  const bool flip = before(to, from);
  if (flip) std::swap(from, to);
  std::vector<Point2> pts{from.point};
  for (std::size_t v = from.seg + 1; v <= to.seg; ++v) {
    if (v == to.seg && to.frac == 0.0) break;
    pts.push_back(arc[v]);
  }
  pts.push_back(to.point);
  if (flip) std::reverse(pts.begin(), pts.end());
  return pts;
}

Location location_on(const IntersectionRecord& r, bool first) {
  return first ? Location{r.seg_first, r.frac_first, r.point} : Location{r.seg_second, r.frac_second, r.point};
}

// Closed walk visiting arcs cyc[0], cyc[1], ..., leaving arc cyc[i] at its
// crossing with cyc[i+1].
std::vector<Point2> cycle_through(const ArcFamily& f, const std::vector<int>& cyc,
                                  const std::vector<const IntersectionRecord*>& joints) {
  // joints[i] is a crossing of cyc[i] and cyc[i+1 mod r].
  const std::size_t r = cyc.size();
  std::vector<Point2> walk;
  for (std::size_t i = 0; i < r; ++i) {
    const int arc = cyc[i];
    const int prev_arc = cyc[(i + r - 1) % r];
    const int next_arc = cyc[(i + 1) % r];
    const IntersectionRecord* in = joints[(i + r - 1) % r];
    const IntersectionRecord* out = joints[i];
    const Location a = location_on(*in, arc < prev_arc);
    const Location b = location_on(*out, arc < next_arc);
    auto piece = sub_arc(f.arcs[static_cast<std::size_t>(arc)], a, b);
    walk.insert(walk.end(), walk.empty() ? piece.begin() : piece.begin() + 1, piece.end());
  }
  if (!walk.empty() && walk.front() != walk.back()) walk.push_back(walk.front());
  return walk;
}

}  // namespace

Polyline lift_arc(const Polyline& arc, Point2 s) {
  std::vector<Point2> out;
  out.reserve(arc.size() - 1);
  double theta = 0.0;
  double prev_arg = 0.0;
  for (std::size_t i = 1; i < arc.size(); ++i) {
    const Point2 d = arc[i] - s;
    const double r = d.norm();
    if (r == 0.0) throw Error(ErrorCode::InvalidArgument, "arc passes through its endpoint");
    const double a = std::atan2(d.y, d.x);
    if (i == 1) {
      theta = a;
    } else {
      const double step = principal_diff(a, prev_arg);
      if (std::abs(step) > pi - 1e-9) {
        throw Error(ErrorCode::ArgumentJump,
                    "vertices " + std::to_string(i - 1) + " and " + std::to_string(i) + " subtend an angle of pi");
      }
      theta += step;
    }
    prev_arg = a;
    out.push_back({std::log(r), theta});
  }
  if (out.size() < 2) throw Error(ErrorCode::InvalidArgument, "arc too short to lift");
  return Polyline::from_points(std::move(out));
}

LiftedFamily lift_family(const ArcFamily& family) {
  LiftedFamily lf;
  for (const Polyline& a : family.arcs) lf.lifts.push_back(lift_arc(a, family.common_endpoint));
  lf.base_offsets.assign(family.arcs.size(), 0);
  return lf;
}

namespace {

// Raw lift values per arc, index-aligned with arc vertices minus one.
std::vector<std::vector<double>> raw_lifts(const ArcFamily& family) {
  std::vector<std::vector<double>> lifts;
  for (const Polyline& a : family.arcs) {
    std::vector<double> pts;
    pts.reserve(a.size() - 1);
    double theta = 0.0;
    double prev = 0.0;
    for (std::size_t i = 1; i < a.size(); ++i) {
      const Point2 d = a[i] - family.common_endpoint;
      const double arg = std::atan2(d.y, d.x);
      if (i == 1) {
        theta = arg;
      } else {
        const double step = principal_diff(arg, prev);
        if (std::abs(step) > pi - 1e-9) throw Error(ErrorCode::ArgumentJump, "sampling too coarse to lift");
        theta += step;
      }
      prev = arg;
      pts.push_back(theta);
    }
    lifts.emplace_back(std::move(pts));
  }
  return lifts;
}

}  // namespace

OffsetTable intersection_offsets(const ArcFamily& family, double tol) {
  family.validate();
  const auto lifts = raw_lifts(family);
  const Point2 s = family.common_endpoint;
  OffsetTable table;
  for (auto& [pair, recs] : pair_crossings(family, tol)) {
    const auto k = static_cast<std::size_t>(pair.first);
    const auto l = static_cast<std::size_t>(pair.second);
    auto& set = table.offsets[pair];
    auto& graze = table.grazing[pair];
    for (IntersectionRecord& r : recs) {
      const double tk = theta_at(family.arcs[k], lifts[k], s, r.seg_first, r.point);
      const double tl = theta_at(family.arcs[l], lifts[l], s, r.seg_second, r.point);
      const double m = (tk - tl) / (2 * pi);
      const double mr = std::round(m);
      if (std::abs(m - mr) > 1e-6) {
        throw Error(ErrorCode::NonIntegerOffset, "lift offset " + std::to_string(m) + " is not an integer");
      }
      r.offset = static_cast<long>(mr);
      set.insert(*r.offset);
      if (r.grazing) graze.insert(*r.offset);
    }
    table.records[pair] = std::move(recs);
  }
  return table;
}

ClassifierReport classify_lift(const ArcFamily& family, double tol) {
  const OffsetTable table = intersection_offsets(family, tol);
  ClassifierReport rep;
  for (const auto& [pair, set] : table.offsets) rep.offsets[pair] = {set.begin(), set.end()};

  if (any_pair_unlinked(table.records)) {
    rep.classification = Classification::Unlinked;
    return rep;
  }

  for (const auto& [pair, recs] : table.records) {
    std::set<long> transverse;
    for (const auto& r : recs) {
      if (!r.grazing) transverse.insert(*r.offset);
    }
    for (long g : table.grazing.at(pair)) {
      if (!transverse.contains(g)) rep.marginal = true;
    }
  }

  const int n = static_cast<int>(family.arcs.size());
  // Two crossings of one pair with different offsets close a loop winding
  // around s.
  for (const auto& [pair, recs] : table.records) {
    if (table.offsets.at(pair).size() < 2) continue;
    const IntersectionRecord* p = &recs.front();
    const IntersectionRecord* q = nullptr;
    for (const auto& r : recs) {
      if (*r.offset != *p->offset) {
        q = &r;
        break;
      }
    }
    rep.classification = Classification::Nested;
    rep.witness_cycle = cycle_through(family, {pair.first, pair.second}, {p, q});
    return rep;
  }

  // Singleton offsets: look for c with m_kl = c_k - c_l, c_0 = 0.
  std::vector<long> c(static_cast<std::size_t>(n), 0);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  auto offset_of = [&](int a, int b) -> long {
    // m_ab with antisymmetry for a > b.
    if (a < b) return *table.offsets.at({a, b}).begin();
    return -*table.offsets.at({b, a}).begin();
  };
  auto joint = [&](int a, int b) -> const IntersectionRecord* {
    return &table.records.at({std::min(a, b), std::max(a, b)}).front();
  };
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = 1;
  while (!bfs.empty()) {
    const int a = bfs.front();
    bfs.pop();
    for (int b = 0; b < n; ++b) {
      if (seen[static_cast<std::size_t>(b)]) continue;
      seen[static_cast<std::size_t>(b)] = 1;
      parent[static_cast<std::size_t>(b)] = a;
      c[static_cast<std::size_t>(b)] = c[static_cast<std::size_t>(a)] - offset_of(a, b);
      bfs.push(b);
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (offset_of(a, b) == c[static_cast<std::size_t>(a)] - c[static_cast<std::size_t>(b)]) continue;
      // Tree path a -> root <- b closed by the failing pair.
      std::vector<int> up_a{a}, up_b{b};
      while (parent[static_cast<std::size_t>(up_a.back())] >= 0) up_a.push_back(parent[static_cast<std::size_t>(up_a.back())]);
      while (parent[static_cast<std::size_t>(up_b.back())] >= 0) up_b.push_back(parent[static_cast<std::size_t>(up_b.back())]);
      while (up_a.size() > 1 && up_b.size() > 1 && up_a[up_a.size() - 2] == up_b[up_b.size() - 2]) {
        up_a.pop_back();
        up_b.pop_back();
      }
      std::vector<int> cyc = up_a;  // a ... lca
      for (std::size_t i = up_b.size() - 1; i-- > 0;) cyc.push_back(up_b[i]);  // ... b
      std::vector<const IntersectionRecord*> joints;
      for (std::size_t i = 0; i < cyc.size(); ++i) joints.push_back(joint(cyc[i], cyc[(i + 1) % cyc.size()]));
      rep.classification = Classification::Nested;
      rep.witness_cycle = cycle_through(family, cyc, joints);
      return rep;
    }
  }

  if (!accumulates(family, table.records)) {
    rep.classification = Classification::Unlinked;
    return rep;
  }
  rep.classification = Classification::Plaited;
  rep.normalization = c;
  return rep;
}

ClassifierReport classify_enclosure(const ArcFamily& family, double tol) {
  family.validate();
  ClassifierReport rep;
  const auto crossings = pair_crossings(family, tol);
  if (any_pair_unlinked(crossings) || !accumulates(family, crossings)) {
    rep.classification = Classification::Unlinked;
    return rep;
  }
  const Point2 s = family.common_endpoint;
  double far = 0.0;
  for (const auto& [pair, recs] : crossings) {
    for (const auto& r : recs) far = std::max(far, distance(r.point, s));
  }
  const double floor = family.accumulation_floor();
  const Point2 targets[] = {s};
  bool previous = false;
  for (double rho = far / 2; rho >= floor / 4; rho /= 4) {
    std::vector<Polyline> curves;
    for (const Polyline& a : family.arcs) {
      for (Polyline& piece : clip_outside_disc(a, s, rho)) curves.push_back(std::move(piece));
    }
    const auto enc = enclosure_witnesses(curves, targets, tol);
    if (enc[0].enclosed) {
      if (rep.witness_cycle.empty()) rep.witness_cycle = enc[0].witness;
      if (previous) break;
    }
    previous = enc[0].enclosed;
  }
  rep.classification = rep.witness_cycle.empty() ? Classification::Plaited : Classification::Nested;
  return rep;
}

ArcFamily make_sine_family(const SineFamilyParams& params, double step) {
  params.validate();
  ArcFamily f;
  for (int k = 0; k < params.n_arcs; ++k) f.arcs.push_back(sample_quotient_arc(params, k, step));
  f.common_endpoint = {0.0, 0.0};
  f.resolution = std::exp(std::min(params.window.min + 2 * pi, params.window.max));
  return f;
}

ArcFamily transform_family(const ArcFamily& family, double scale, double angle, Point2 shift) {
  const double c = scale * std::cos(angle);
  const double s = scale * std::sin(angle);
  auto map = [&](Point2 p) { return Point2{c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y}; };
  ArcFamily out;
  for (const Polyline& a : family.arcs) {
    std::vector<Point2> pts;
    pts.reserve(a.size());
    for (const Point2& v : a.vertices()) pts.push_back(map(v));
    out.arcs.push_back(Polyline::from_points(std::move(pts)));
  }
  out.common_endpoint = map(family.common_endpoint);
  out.resolution = family.resolution * scale;
  return out;
}

}  // namespace plait
