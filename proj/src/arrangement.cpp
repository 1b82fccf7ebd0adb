#include <algorithm>
#include <cmath>
#include <numeric>

#include "plait/error.hpp"
#include "plait/geometry.hpp"

namespace plait {

namespace {

struct Cut {
  std::size_t seg;
  double frac;
  int node;
  bool joined = false;  // merged with the preceding cut
};

struct UnionFind {
  std::vector<int> parent;
  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

struct Edge {
  int from;
  int to;
  std::vector<Point2> chain;
};

double signed_area(const std::vector<Point2>& walk) {
  double a = 0.0;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) a += cross(walk[i], walk[i + 1]);
  return a / 2;
}

// First direction leaving chain[0] that is not swamped by rounding.
double leaving_angle(const std::vector<Point2>& chain) {
  const Point2 o = chain.front();
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const Point2 d = chain[i] - o;
    if (d.norm() > kVertexDedupTol * std::max(o.norm(), chain[i].norm())) return std::atan2(d.y, d.x);
  }
  const Point2 d = chain.back() - o;
  return std::atan2(d.y, d.x);
}

class Arrangement {
 public:
  Arrangement(std::span<const Polyline> curves, double tol) : curves_(curves) {
    cuts_.resize(curves.size());
    for (std::size_t c = 0; c < curves.size(); ++c) {
      add_cut(c, 0, 0.0, new_node(curves[c].front()));
      add_cut(c, curves[c].segment_count() - 1, 1.0, new_node(curves[c].back()));
      for (const IntersectionRecord& r : self_intersections(curves[c], tol)) {
        const int n = new_node(r.point);
        add_cut(c, r.seg_first, r.frac_first, n);
        add_cut(c, r.seg_second, r.frac_second, n);
      }
      for (std::size_t d = c + 1; d < curves.size(); ++d) {
        for (const IntersectionRecord& r : polyline_intersections(curves[c], curves[d], tol)) {
          const int n = new_node(r.point);
          add_cut(c, r.seg_first, r.frac_first, n);
          add_cut(d, r.seg_second, r.frac_second, n);
        }
      }
    }
    merge_coincident_cuts(tol);
    build_edges();
    trace_faces();
  }

  const std::vector<std::vector<Point2>>& faces() const { return faces_; }

 private:
  int new_node(Point2 p) {
    points_.push_back(p);
    return uf_.add();
  }

  void add_cut(std::size_t curve, std::size_t seg, double frac, int node) {
    if (frac >= 1.0 && seg + 1 < curves_[curve].segment_count()) {
      ++seg;
      frac = 0.0;
    }
    cuts_[curve].push_back({seg, frac, node, false});
  }

  void merge_coincident_cuts(double tol) {
    for (auto& cuts : cuts_) {
      std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) {
        return a.seg < b.seg || (a.seg == b.seg && a.frac < b.frac);
      });
      const Polyline& curve = curves_[static_cast<std::size_t>(&cuts - cuts_.data())];
      auto seg_len = [&](std::size_t seg) { return distance(curve[seg], curve[seg + 1]); };
      for (std::size_t i = 1; i < cuts.size(); ++i) {
        const Cut& p = cuts[i - 1];
        Cut& q = cuts[i];
        // Cuts can straddle a vertex: (seg, ~1) and (seg + 1, 0).
        const double gap = curve.arc_length(q.seg, q.frac) - curve.arc_length(p.seg, p.frac);
        if (gap <= tol * std::max(seg_len(p.seg), seg_len(q.seg))) {
          uf_.unite(q.node, p.node);
          q.joined = true;
        }
      }
    }
    // A node's position is that of its representative.
    for (std::size_t i = 0; i < points_.size(); ++i) {
      points_[i] = points_[static_cast<std::size_t>(uf_.find(static_cast<int>(i)))];
    }
  }

  void build_edges() {
    for (std::size_t c = 0; c < curves_.size(); ++c) {
      const Polyline& curve = curves_[c];
      const auto& cuts = cuts_[c];
      std::size_t prev = 0;
      for (std::size_t k = 1; k < cuts.size(); ++k) {
        const int a = uf_.find(cuts[prev].node);
        const int b = uf_.find(cuts[k].node);
        if (cuts[k].seg == cuts[prev].seg && cuts[k].frac - cuts[prev].frac <= 0.0) continue;
        if (a == b && (cuts[k].seg == cuts[prev].seg || cuts[k].joined)) {
          // The cut merge collapsed them, so nothing lies between.
          prev = k;
          continue;
        }
        Edge e{a, b, {}};
        e.chain.push_back(points_[static_cast<std::size_t>(a)]);
        for (std::size_t v = cuts[prev].seg + 1; v <= cuts[k].seg; ++v) {
          if (v == cuts[k].seg && cuts[k].frac == 0.0) break;
          push_distinct(e.chain, curve[v]);
        }
        const Point2 end = points_[static_cast<std::size_t>(b)];
        if (e.chain.size() >= 2 && distance(e.chain.back(), end) <=
                                       kVertexDedupTol * std::max(end.norm(), e.chain.back().norm())) {
          e.chain.back() = end;
        } else {
          e.chain.push_back(end);
        }
        if (e.chain.size() < 2 || (a == b && e.chain.size() < 4)) {
          throw Error(ErrorCode::DegenerateArrangement, "splitting produced a degenerate edge");
        }
        edges_.push_back(std::move(e));
        prev = k;
      }
    }
  }

  static void push_distinct(std::vector<Point2>& chain, Point2 p) {
    if (chain.empty() || distance(chain.back(), p) > kVertexDedupTol * std::max(chain.back().norm(), p.norm())) {
      chain.push_back(p);
    }
  }

  void trace_faces() {
    const std::size_t nh = 2 * edges_.size();
    std::vector<std::vector<std::pair<double, std::size_t>>> around(points_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const Edge& ed = edges_[e];
      around[static_cast<std::size_t>(ed.from)].push_back({leaving_angle(ed.chain), 2 * e});
      std::vector<Point2> rev(ed.chain.rbegin(), ed.chain.rend());
      around[static_cast<std::size_t>(ed.to)].push_back({leaving_angle(rev), 2 * e + 1});
    }
    std::vector<std::size_t> pos(nh);
    for (auto& lst : around) {
      std::sort(lst.begin(), lst.end());
      for (std::size_t i = 0; i < lst.size(); ++i) pos[lst[i].second] = i;
    }
    auto origin = [&](std::size_t h) {
      const Edge& e = edges_[h / 2];
      return static_cast<std::size_t>(h % 2 == 0 ? e.from : e.to);
    };
    auto next = [&](std::size_t h) {
      const std::size_t twin = h ^ 1U;
      const auto& lst = around[origin(twin)];
      const std::size_t p = pos[twin];
      return lst[(p + lst.size() - 1) % lst.size()].second;
    };
    std::vector<char> seen(nh, 0);
    for (std::size_t start = 0; start < nh; ++start) {
      if (seen[start]) continue;
      std::vector<Point2> walk;
      std::size_t h = start;
      while (!seen[h]) {
        seen[h] = 1;
        const Edge& e = edges_[h / 2];
        if (h % 2 == 0) {
          for (std::size_t i = walk.empty() ? 0 : 1; i < e.chain.size(); ++i) walk.push_back(e.chain[i]);
        } else {
          for (std::size_t i = e.chain.size() - (walk.empty() ? 1 : 2) + 1; i-- > 0;) walk.push_back(e.chain[i]);
        }
        h = next(h);
      }
      faces_.push_back(std::move(walk));
    }
  }

  std::span<const Polyline> curves_;
  std::vector<std::vector<Cut>> cuts_;
  std::vector<Point2> points_;
  UnionFind uf_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Point2>> faces_;
};

}  // namespace

std::vector<Enclosure> enclosure_witnesses(std::span<const Polyline> curves, std::span<const Point2> targets,
                                           double tol) {
  for (const Point2& t : targets) {
    for (const Polyline& c : curves) {
      for (std::size_t i = 0; i < c.segment_count(); ++i) {
        const double len = distance(c[i], c[i + 1]);
        if (point_segment_distance(t, c[i], c[i + 1]) <= tol * len) {
          throw Error(ErrorCode::PointOnBoundary, "target lies on a curve");
        }
      }
    }
  }
  std::vector<Enclosure> out(targets.size());
  if (curves.empty()) return out;
  const Arrangement arr(curves, tol);
  std::vector<double> best_area(targets.size(), INFINITY);
  for (const auto& walk : arr.faces()) {
    if (walk.size() < 3) continue;
    const Rect box = Rect::bounding(walk);
    double area = -1.0;
    for (std::size_t k = 0; k < targets.size(); ++k) {
      if (!box.contains(targets[k])) continue;
      if (winding_number_raw(walk, targets[k]) == 0) continue;
      if (area < 0) area = std::abs(signed_area(walk));
      if (area < best_area[k]) {
        best_area[k] = area;
        out[k].enclosed = true;
        out[k].witness = walk;
        if (out[k].witness.front() != out[k].witness.back()) out[k].witness.push_back(walk.front());
      }
    }
  }
  return out;
}

std::vector<bool> enclosure_check(std::span<const Polyline> curves, std::span<const Point2> targets, double tol) {
  std::vector<bool> flags;
  for (const Enclosure& e : enclosure_witnesses(curves, targets, tol)) flags.push_back(e.enclosed);
  return flags;
}

}  // namespace plait
