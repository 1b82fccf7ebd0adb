#include "plait/substitution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "plait/error.hpp"

namespace plait {

namespace {

constexpr double kSpliceTol = 1e-9;

std::string fmt_point(Point2 p) {
  std::ostringstream os;
  os << "(" << p.x << ", " << p.y << ")";
  return os.str();
}

bool near(Point2 a, Point2 b) {
  return distance(a, b) <= kSpliceTol * std::max({1.0, a.norm(), b.norm()});
}

double rect_distance(const Rect& r, Point2 p) {
  const double dx = std::max({r.xmin - p.x, 0.0, p.x - r.xmax});
  const double dy = std::max({r.ymin - p.y, 0.0, p.y - r.ymax});
  return std::hypot(dx, dy);
}

}  // namespace

Contraction::Contraction(std::array<double, 4> linear, Point2 translation)
    : linear_(linear), translation_(translation) {
  const double a = linear[0], b = linear[1], c = linear[2], d = linear[3];
  // largest singular value
  const double s1 = a * a + b * b + c * c + d * d;
  const double det = a * d - b * c;
  const double disc = std::sqrt(std::max(0.0, s1 * s1 - 4 * det * det));
  ratio_ = std::sqrt((s1 + disc) / 2);
}

Contraction Contraction::make(std::array<double, 4> linear, Point2 translation) {
  for (double v : linear) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "map coefficients must be finite");
  }
  if (!translation.finite()) throw Error(ErrorCode::InvalidArgument, "map translation must be finite");
  Contraction c(linear, translation);
  if (!(c.ratio() < 1.0)) throw Error(ErrorCode::InvalidArgument, "map is not a contraction");
  if (c.determinant() == 0.0) throw Error(ErrorCode::InvalidArgument, "map is singular");
  return c;
}

Contraction Contraction::identity() { return Contraction({1, 0, 0, 1}, {0, 0}); }

Contraction Contraction::after(const Contraction& inner) const {
  const auto& m = linear_;
  const auto& n = inner.linear_;
  std::array<double, 4> lin{m[0] * n[0] + m[1] * n[2], m[0] * n[1] + m[1] * n[3],
                            m[2] * n[0] + m[3] * n[2], m[2] * n[1] + m[3] * n[3]};
  return Contraction(lin, apply(inner.translation_));
}

Rect Contraction::image(const Rect& r) const {
  const std::vector<Point2> corners{apply({r.xmin, r.ymin}), apply({r.xmax, r.ymin}),
                                    apply({r.xmin, r.ymax}), apply({r.xmax, r.ymax})};
  return Rect::bounding(corners);
}

std::string word_string(const Word& w) {
  std::string s;
  for (int c : w) s += std::to_string(c);
  return s;
}

Point2 SubstitutionSystem::reference_point() const {
  const auto& m = maps.front().linear();
  const Point2 t = maps.front().translation();
  // (I - M) x = t
  const double a = 1 - m[0], b = -m[1], c = -m[2], d = 1 - m[3];
  const double det = a * d - b * c;
  return {(d * t.x - b * t.y) / det, (a * t.y - c * t.x) / det};
}

double SubstitutionSystem::max_ratio() const {
  double r = 0.0;
  for (const auto& m : maps) r = std::max(r, m.ratio());
  return r;
}

void SubstitutionSystem::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (!(domain.width() > 0) || !(domain.height() > 0)) fail("rectangle must have positive area");
  if (maps.empty() || maps.size() > 2) fail("a system has one or two maps");
  if (ports.size() != maps.size()) fail("one entry/exit port pair is required per map");

  std::vector<Rect> cells;
  for (std::size_t j = 0; j < maps.size(); ++j) {
    const Rect c = maps[j].image(domain);
    if (!(c.xmin > domain.xmin && c.xmax < domain.xmax && c.ymin > domain.ymin && c.ymax < domain.ymax)) {
      fail("S_" + std::to_string(j + 1) + "(R) is not inside the interior of R");
    }
    cells.push_back(c);
  }
  if (cells.size() == 2 && cells[0].overlaps(cells[1])) fail("S_1(R) and S_2(R) intersect");

  for (const Point2& v : templ.vertices()) {
    if (!domain.contains(v)) fail("template vertex " + fmt_point(v) + " lies outside R");
  }
  for (const Point2& v : base.vertices()) {
    if (!domain.contains(v)) fail("base vertex " + fmt_point(v) + " lies outside R");
  }

  auto on_base = [&](Point2 p) {
    for (std::size_t i = 0; i < base.segment_count(); ++i) {
      if (point_segment_distance(p, base[i], base[i + 1]) <= kSpliceTol * std::max(1.0, p.norm())) return true;
    }
    return false;
  };
  for (std::size_t j = 0; j < maps.size(); ++j) {
    if (!on_base(maps[j].apply(base.front())) || !on_base(maps[j].apply(base.back()))) {
      fail("S_" + std::to_string(j + 1) + " does not map the base into itself");
    }
  }

  std::vector<std::size_t> order(ports.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ports[a].entry < ports[b].entry; });
  std::size_t last = 0;
  for (std::size_t j : order) {
    const Port& p = ports[j];
    const std::string name = "port " + std::to_string(j + 1);
    if (!(p.entry < p.exit) || p.exit >= templ.size()) fail(name + " has invalid vertex indices");
    if (p.entry == 0 || p.exit + 1 == templ.size()) fail(name + " must not use a template endpoint");
    if (p.entry < last) fail(name + " overlaps another port");
    last = p.exit;
    if (!near(templ[p.entry], maps[j].apply(templ.front()))) {
      throw Error(ErrorCode::SpliceMismatch, name + " entry " + fmt_point(templ[p.entry]) + " is not S_" +
                                                 std::to_string(j + 1) + "(template start)");
    }
    if (!near(templ[p.exit], maps[j].apply(templ.back()))) {
      throw Error(ErrorCode::SpliceMismatch, name + " exit " + fmt_point(templ[p.exit]) + " is not S_" +
                                                 std::to_string(j + 1) + "(template end)");
    }
  }

  if (const auto hits = self_intersections(templ); !hits.empty()) {
    throw Error(ErrorCode::SelfIntersection, "template crosses itself at " + fmt_point(hits.front().point));
  }
}

SubstitutionSystem SubstitutionSystem::builtin(std::string_view name) {
  SubstitutionSystem s;
  s.domain = {0.0, -1.0, 1.0, 1.0};
  s.base = Polyline({{0.0, 0.0}, {1.0, 0.0}});
  s.maps = {Contraction::make({0.2, 0, 0, 0.2}, {0.1, 0.0}),
            Contraction::make({0.2, 0, 0, 0.2}, {0.7, 0.0})};
  if (name == "nesting") {
    s.variant = "nesting";
    // Two rings, each descending through the base on both sides of a cell
    // and closing over it, so every Cantor point is encircled.
    s.templ = Polyline({{0, 0.9},       {0.02, 0.9},    {0.02, -0.35},  {0.36, -0.35},
                        {0.36, 0.3},    {0.06, 0.3},    {0.06, -0.1},   {0.08, -0.1},
                        {0.08, 0.18},   {0.1, 0.18},    {0.3, 0.18},    {0.33, 0.18},
                        {0.33, -0.25},  {0.04, -0.25},  {0.04, 0.4},    {0.62, 0.4},
                        {0.62, -0.35},  {0.96, -0.35},  {0.96, 0.3},    {0.66, 0.3},
                        {0.66, -0.1},   {0.68, -0.1},   {0.68, 0.18},   {0.7, 0.18},
                        {0.9, 0.18},    {0.93, 0.18},   {0.93, -0.25},  {0.64, -0.25},
                        {0.64, 0.45},   {0.98, 0.45},   {0.98, 0.9},    {1, 0.9}});
    s.ports = {{9, 10}, {23, 24}};
  } else if (name == "plaiting") {
    s.variant = "plaiting";
    // x-monotone zigzag: a graph over the base never closes a loop.
    s.templ = Polyline({{0, 0.9},      {0.03, -0.5}, {0.06, 0.5}, {0.1, 0.18},
                        {0.3, 0.18},   {0.35, -0.5}, {0.5, 0.6},  {0.65, -0.5},
                        {0.7, 0.18},   {0.9, 0.18},  {0.95, -0.5}, {1, 0.9}});
    s.ports = {{3, 4}, {8, 9}};
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown builtin system '" + std::string(name) + "'");
  }
  s.validate();
  return s;
}

Contraction compose(const SubstitutionSystem& sys, std::span<const int> word) {
  Contraction c = Contraction::identity();
  for (int letter : word) {
    if (letter < 1 || static_cast<std::size_t>(letter) > sys.maps.size()) {
      throw Error(ErrorCode::InvalidArgument, "word letter out of range");
    }
    c = c.after(sys.maps[static_cast<std::size_t>(letter - 1)]);
  }
  return c;
}

std::vector<Word> words_of_length(const SubstitutionSystem& sys, int depth) {
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "depth must be non-negative");
  std::vector<Word> out{Word{}};
  for (int d = 0; d < depth; ++d) {
    std::vector<Word> next;
    next.reserve(out.size() * sys.maps.size());
    for (const Word& w : out) {
      for (std::size_t j = 1; j <= sys.maps.size(); ++j) {
        Word x = w;
        x.push_back(static_cast<int>(j));
        next.push_back(std::move(x));
      }
    }
    out = std::move(next);
  }
  return out;
}

namespace {

std::vector<Point2> build_stage(const SubstitutionSystem& sys, int n) {
  const auto tv = sys.templ.vertices();
  std::vector<Point2> cur(tv.begin(), tv.end());
  std::vector<std::size_t> order(sys.ports.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return sys.ports[a].entry < sys.ports[b].entry; });

  for (int level = 1; level <= n; ++level) {
    std::vector<Point2> next;
    std::size_t from = 0;
    for (std::size_t j : order) {
      const Port& port = sys.ports[j];
      for (std::size_t i = from; i <= port.entry; ++i) next.push_back(tv[i]);
      const Contraction& m = sys.maps[j];
      const Point2 head = m.apply(cur.front());
      const Point2 tail = m.apply(cur.back());
      if (!near(head, tv[port.entry]) || !near(tail, tv[port.exit])) {
        throw Error(ErrorCode::SpliceMismatch, "copy S_" + std::to_string(j + 1) + " of stage " +
                                                   std::to_string(level - 1) + " misses the ports near " +
                                                   fmt_point(tv[port.entry]));
      }
      for (std::size_t i = 1; i + 1 < cur.size(); ++i) next.push_back(m.apply(cur[i]));
      from = port.exit;
    }
    for (std::size_t i = from; i < tv.size(); ++i) next.push_back(tv[i]);
    cur = std::move(next);
  }
  return cur;
}

Word deepest_cell(const SubstitutionSystem& sys, Point2 p, int max_depth) {
  Word w;
  for (int d = 0; d < max_depth; ++d) {
    bool found = false;
    for (std::size_t j = 1; j <= sys.maps.size() && !found; ++j) {
      Word x = w;
      x.push_back(static_cast<int>(j));
      if (compose(sys, x).image(sys.domain).contains(p)) {
        w = std::move(x);
        found = true;
      }
    }
    if (!found) break;
  }
  return w;
}

// Sub-polyline between arc lengths t0 < t1.
std::optional<Polyline> slice(const Polyline& p, double t0, double t1) {
  std::vector<Point2> pts;
  const double len = p.length();
  t0 = std::clamp(t0, 0.0, len);
  t1 = std::clamp(t1, 0.0, len);
  if (!(t1 > t0)) return std::nullopt;
  for (std::size_t i = 0; i < p.segment_count(); ++i) {
    const double a = p.arc_length(i, 0.0);
    const double b = p.arc_length(i, 1.0);
    if (b < t0 || a > t1) continue;
    const double seg = b - a;
    auto at = [&](double t) { return seg > 0 ? p.point_on_segment(i, (t - a) / seg) : p[i]; };
    if (pts.empty()) pts.push_back(at(std::max(a, t0)));
    pts.push_back(at(std::min(b, t1)));
  }
  if (pts.size() < 2) return std::nullopt;
  auto pl = Polyline::from_points(std::move(pts));
  return pl;
}

// Arc length along the polyline of its point nearest to q.
double locate(const Polyline& p, Point2 q) {
  double best = std::numeric_limits<double>::infinity();
  double t = 0.0;
  for (std::size_t i = 0; i < p.segment_count(); ++i) {
    const Point2 a = p[i], d = p[i + 1] - p[i];
    const double s = std::clamp(dot(q - a, d) / dot(d, d), 0.0, 1.0);
    const double dist = distance(q, a + s * d);
    if (dist < best) {
      best = dist;
      t = p.arc_length(i, s);
    }
  }
  return t;
}

}  // namespace

StageCurve stage(const SubstitutionSystem& sys, int n) {
  if (n < 0 || n > kMaxStage) {
    throw Error(ErrorCode::InvalidArgument, "stage must lie in [0, " + std::to_string(kMaxStage) + "]");
  }
  StageCurve st;
  st.n = n;
  st.curve = Polyline::from_points(build_stage(sys, n));
  const auto hits = self_intersections(st.curve);
  if (!hits.empty()) {
    const Point2 at = hits.front().point;
    throw Error(ErrorCode::SelfIntersection, "stage " + std::to_string(n) + " crosses itself at " +
                                                 fmt_point(at) + " in cell '" +
                                                 word_string(deepest_cell(sys, at, n + 1)) + "'");
  }
  st.dirty_words = words_of_length(sys, n + 1);
  for (const Word& w : st.dirty_words) st.dirty_regions.push_back(compose(sys, w).image(sys.domain));
  return st;
}

std::vector<Point2> attractor_points(const SubstitutionSystem& sys, int depth) {
  if (depth == 0) {
    std::vector<Rect> cells;
    for (const auto& m : sys.maps) cells.push_back(m.image(sys.domain));
    Point2 best = sys.base.front();
    double best_d = -1.0;
    constexpr int kSamples = 1000;
    for (int i = 0; i <= kSamples; ++i) {
      const double t = sys.base.length() * i / kSamples;
      const auto [seg, s] = [&] {
        for (std::size_t k = 0; k < sys.base.segment_count(); ++k) {
          const double a = sys.base.arc_length(k, 0.0), b = sys.base.arc_length(k, 1.0);
          if (t <= b || k + 1 == sys.base.segment_count()) return std::pair{k, b > a ? (t - a) / (b - a) : 0.0};
        }
        return std::pair{std::size_t{0}, 0.0};
      }();
      const Point2 p = sys.base.point_on_segment(seg, std::clamp(s, 0.0, 1.0));
      double d = std::min(distance(p, sys.base.front()), distance(p, sys.base.back()));
      for (const Rect& c : cells) d = std::min(d, rect_distance(c, p));
      if (d > best_d) {
        best_d = d;
        best = p;
      }
    }
    return {best};
  }
  const Point2 ref = sys.reference_point();
  std::vector<Point2> out;
  for (const Word& w : words_of_length(sys, depth)) out.push_back(compose(sys, w).apply(ref));
  return out;
}

std::vector<IntersectionRecord> stage_intersections(const SubstitutionSystem& sys, const StageCurve& st) {
  return polyline_intersections(sys.base, st.curve);
}

std::vector<IntersectionRecord> stage_intersections(const SubstitutionSystem& sys, int n) {
  return stage_intersections(sys, stage(sys, n));
}

std::vector<double> accumulation_profile(const SubstitutionSystem& sys, const StageCurve& st) {
  const auto records = stage_intersections(sys, st);
  const Point2 ref = sys.reference_point();
  std::vector<double> out;
  for (int d = 1; d <= st.n; ++d) {
    double worst = 0.0;
    for (const Word& w : words_of_length(sys, d)) {
      const Contraction c = compose(sys, w);
      const Rect cell = c.image(sys.domain);
      const Point2 anchor = c.apply(ref);
      bool any = false;
      for (const auto& r : records) {
        if (!cell.contains(r.point, 1e-12 * cell.diameter())) continue;
        any = true;
        worst = std::max(worst, distance(r.point, anchor));
      }
      if (!any) throw Error(ErrorCode::InvalidArgument, "cell '" + word_string(w) + "' holds no crossing");
    }
    out.push_back(worst);
  }
  return out;
}

std::vector<NestingWitness> nesting_witness_cycles(const SubstitutionSystem& sys, const StageCurve& st, int depth) {
  const auto records = stage_intersections(sys, st);
  const auto points = attractor_points(sys, depth);
  const auto words = depth == 0 ? std::vector<Word>{Word{}} : words_of_length(sys, depth);
  std::vector<NestingWitness> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    NestingWitness w;
    w.word = words[i];
    w.point = points[i];
    const double tp = locate(sys.base, w.point);
    double left = 0.0, right = sys.base.length();
    bool has_left = false, has_right = false;
    for (const auto& r : records) {
      if (r.t_first < tp) {
        left = r.t_first;
        has_left = true;
      } else if (r.t_first > tp && !has_right) {
        right = r.t_first;
        has_right = true;
      }
    }
    std::vector<Polyline> curves{st.curve};
    if (has_left) {
      if (auto piece = slice(sys.base, 0.0, left)) curves.push_back(*piece);
    }
    if (has_right) {
      if (auto piece = slice(sys.base, right, sys.base.length())) curves.push_back(*piece);
    }
    const std::vector<Point2> target{w.point};
    auto enc = enclosure_witnesses(curves, target);
    w.enclosed = enc.front().enclosed;
    w.cycle = std::move(enc.front().witness);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<bool> nesting_witnesses(const SubstitutionSystem& sys, int n, int depth) {
  std::vector<bool> out;
  for (const auto& w : nesting_witness_cycles(sys, stage(sys, n), depth)) out.push_back(w.enclosed);
  return out;
}

std::vector<ChangePattern> change_patterns(const SubstitutionSystem& sys, int n_max) {
  std::vector<ChangePattern> out;
  for (int n = 0; n < n_max; ++n) {
    const StageCurve next = stage(sys, n + 1);
    const auto records = stage_intersections(sys, next);
    std::vector<std::vector<int>> per_cell;
    for (const Word& w : words_of_length(sys, n + 1)) {
      const Contraction c = compose(sys, w);
      const Rect cell = c.image(sys.domain);
      const double slack = 1e-9 * cell.diameter();
      std::vector<std::pair<double, int>> seq;
      for (const auto& r : records) {
        if (!cell.contains(r.point, slack)) continue;
        const Point2 bd = sys.base[r.seg_first + 1] - sys.base[r.seg_first];
        const Point2 cd = next.curve[r.seg_second + 1] - next.curve[r.seg_second];
        const double sgn = cross(bd, cd) * c.determinant();
        seq.push_back({r.t_second, sgn > 0 ? 1 : -1});
      }
      std::sort(seq.begin(), seq.end());
      std::vector<int> signs;
      for (const auto& [t, s] : seq) signs.push_back(s);
      per_cell.push_back(std::move(signs));
    }
    std::sort(per_cell.begin(), per_cell.end());
    per_cell.erase(std::unique(per_cell.begin(), per_cell.end()), per_cell.end());
    out.push_back(std::move(per_cell));
  }
  return out;
}

std::optional<int> self_similarity_period(const SubstitutionSystem& sys, int n_max) {
  const auto patterns = change_patterns(sys, n_max);
  return detect_period(std::span<const ChangePattern>(patterns), n_max / 2);
}

std::vector<LocalPair> local_families(const SubstitutionSystem& sys, const StageCurve& st, const Word& word) {
  if (static_cast<int>(word.size()) > st.n + 1) {
    throw Error(ErrorCode::InvalidArgument, "word is deeper than the stage resolves");
  }
  Word cell = word;
  while (static_cast<int>(cell.size()) < st.n + 1) cell.push_back(1);
  const Contraction c = compose(sys, cell);
  const Point2 p = compose(sys, word).apply(sys.reference_point());
  const Point2 in_pt = c.apply(sys.templ.front());
  const Point2 out_pt = c.apply(sys.templ.back());

  auto nearest = [&](Point2 q) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < st.curve.size(); ++i) {
      const double d = distance(st.curve[i], q);
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    if (!near(st.curve[best], q)) throw Error(ErrorCode::SpliceMismatch, "cell ports not found on stage curve");
    return best;
  };
  std::size_t i_in = nearest(in_pt), i_out = nearest(out_pt);
  if (i_in > i_out) std::swap(i_in, i_out);

  std::vector<Point2> cin{p}, cout{p};
  for (std::size_t i = i_in + 1; i-- > 0;) cin.push_back(st.curve[i]);
  for (std::size_t i = i_out; i < st.curve.size(); ++i) cout.push_back(st.curve[i]);

  const double tp = locate(sys.base, p);
  std::vector<Polyline> halves;
  std::vector<std::string> half_names;
  if (auto l = slice(sys.base, 0.0, tp)) {
    std::vector<Point2> v{p};
    const auto r = l->reversed();
    for (std::size_t i = 1; i < r.size(); ++i) v.push_back(r[i]);
    halves.push_back(Polyline::from_points(std::move(v)));
    half_names.push_back("base_left");
  }
  if (auto r = slice(sys.base, tp, sys.base.length())) {
    std::vector<Point2> v{p};
    for (std::size_t i = 1; i < r->size(); ++i) v.push_back((*r)[i]);
    halves.push_back(Polyline::from_points(std::move(v)));
    half_names.push_back("base_right");
  }
  const Polyline curve_in = Polyline::from_points(std::move(cin));
  const Polyline curve_out = Polyline::from_points(std::move(cout));

  std::vector<LocalPair> out;
  for (std::size_t h = 0; h < halves.size(); ++h) {
    for (const auto& [name, arc] : {std::pair{"curve_in", &curve_in}, std::pair{"curve_out", &curve_out}}) {
      LocalPair lp;
      lp.name = half_names[h] + "/" + name;
      lp.family.arcs = {halves[h], *arc};
      lp.family.common_endpoint = p;
      lp.family.resolution = c.image(sys.domain).diameter();
      out.push_back(std::move(lp));
    }
  }
  return out;
}

LocalClassification classify_local(const SubstitutionSystem& sys, const StageCurve& st, const Word& word) {
  LocalClassification out;
  bool nested = false, plaited = false;
  for (const auto& lp : local_families(sys, st, word)) {
    const auto report = classify_lift(lp.family);
    out.pairs.push_back({lp.name, report.classification});
    nested |= report.classification == Classification::Nested;
    plaited |= report.classification == Classification::Plaited;
  }
  out.classification = nested ? Classification::Nested : plaited ? Classification::Plaited : Classification::Unlinked;
  return out;
}

}  // namespace plait
