#include "plait/verify.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "plait/error.hpp"

namespace plait {

using std::numbers::pi;

namespace {

using Outcome = std::optional<std::string>;  // counterexample on failure

struct Property {
  const char* name;
  std::function<Outcome(std::mt19937_64&, const VerifyOptions&)> run;
};

template <class... Args>
std::string describe(Args&&... args) {
  std::ostringstream os;
  os.precision(12);
  (os << ... << args);
  return os.str();
}

// Sign-scan roots of f on [lo, hi] refined by bisection.
std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi, double step) {
  std::vector<double> roots;
  const auto n = static_cast<long>(std::ceil((hi - lo) / step));
  double x0 = lo, f0 = f(lo);
  for (long i = 1; i <= n; ++i) {
    const double x1 = i == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    const double f1 = f(x1);
    if ((f0 < 0) != (f1 < 0)) {
      double a = x0, b = x1, fa = f0;
      for (int it = 0; it < 100; ++it) {
        const double m = (a + b) / 2, fm = f(m);
        if ((fm < 0) == (fa < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back((a + b) / 2);
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

// ---- sine -----------------------------------------------------------------

Outcome translate_identity(std::mt19937_64& rng, const VerifyOptions&) {
  std::uniform_int_distribution<int> nd(2, 8), bd(-5, 5);
  std::uniform_real_distribution<double> ad(-4, 4), xd(-50, 50);
  for (int i = 0; i < 10000; ++i) {
    const SineFamilyParams p{nd(rng), ad(rng)};
    const LiftedArcId id{std::uniform_int_distribution<int>(0, p.n_arcs - 1)(rng), bd(rng)};
    const double x = xd(rng);
    if (!translate_check(p, id, x)) return describe("N=", p.n_arcs, " a=", p.amplitude, " k=", id.k, " n=", id.n, " x=", x);
  }
  return std::nullopt;
}

Outcome scaling_covariance(std::mt19937_64& rng, const VerifyOptions&) {
  std::uniform_int_distribution<int> nd(2, 8);
  std::uniform_real_distribution<double> ad(-4, 4), xd(-30, 8);
  for (int i = 0; i < 2000; ++i) {
    const SineFamilyParams p{nd(rng), ad(rng)};
    const int k = std::uniform_int_distribution<int>(0, p.n_arcs - 1)(rng);
    const double x = xd(rng);
    const Point2 lhs = std::exp(2 * pi / p.n_arcs) * project(lifted_point(p, {k, 0}, x));
    const Point2 rhs = project(lifted_point(p, {(k + 1) % p.n_arcs, 0}, x + 2 * pi / p.n_arcs));
    if (distance(lhs, rhs) > 1e-12 * std::max(1.0, rhs.norm())) {
      return describe("N=", p.n_arcs, " a=", p.amplitude, " k=", k, " x=", x);
    }
  }
  return std::nullopt;
}

Outcome closed_form_vs_scan(std::mt19937_64& rng, const VerifyOptions&) {
  std::uniform_real_distribution<double> ad(1e-3, 4), wd(-10, 10);
  for (int n = 2; n <= 8; ++n) {
    for (int trial = 0; trial < 2; ++trial) {
      const double w0 = wd(rng);
      const SineFamilyParams p{n, ad(rng), {w0, w0 + 4 * pi}};
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          if (k == l) continue;
          for (long d = -2; d <= 2; ++d) {
            const auto roots = solve_lift_intersections(p, k, l, d, p.window);
            if (!roots.empty() && roots.front().tangent) continue;
            const auto scan = scan_roots([&](double x) { return lift_residual(p, k, l, d, x); }, p.window.min,
                                         p.window.max, 1e-3);
            bool ok = roots.size() == scan.size();
            for (std::size_t i = 0; ok && i < roots.size(); ++i) ok = std::abs(roots[i].x - scan[i]) <= 1e-6;
            if (!ok) {
              return describe("N=", n, " a=", p.amplitude, " k=", k, " l=", l, " delta=", d, " solver=", roots.size(),
                              " scan=", scan.size());
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

Outcome root_cadence(std::mt19937_64& rng, const VerifyOptions&) {
  std::uniform_int_distribution<int> nd(2, 8);
  std::uniform_real_distribution<double> ad(0.05, 4), wd(-40, 40);
  for (int cfg = 0; cfg < 20; ++cfg) {
    const int n = nd(rng);
    const int k = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int l = std::uniform_int_distribution<int>(0, n - 2)(rng);
    if (l >= k) ++l;
    const SineFamilyParams p{n, ad(rng)};
    for (int w = 0; w < 100; ++w) {
      const double lo = wd(rng);
      const Window win{lo, lo + 2 * pi};
      const auto all = solve_lift_intersections(p, k, l, 0, {lo - 1, lo + 2 * pi + 1});
      bool clear = true;
      for (const auto& r : all) clear = clear && std::abs(r.x - win.min) > 1e-6 && std::abs(r.x - win.max) > 1e-6;
      if (!clear) continue;
      const auto roots = solve_lift_intersections(p, k, l, 0, win);
      if (roots.size() != 2) return describe("N=", n, " k=", k, " l=", l, " a=", p.amplitude, " window=[", lo, ", ", lo + 2 * pi, "] roots=", roots.size());
    }
  }
  return std::nullopt;
}

Outcome threshold_formula(std::mt19937_64&, const VerifyOptions& o) {
  for (int n = 2; n <= 8; ++n) {
    const double want = n % 2 == 0 ? pi / 2 : pi / (2 * std::sin(pi * (n - 1) / (2.0 * n)));
    const double got = o.threshold(n);
    if (n % 2 == 0 ? got != want : std::abs(got - want) > 1e-12) return describe("N=", n, " a*=", got, " expected ", want);
  }
  return std::nullopt;
}

Outcome threshold_matches_onset(std::mt19937_64&, const VerifyOptions& o) {
  for (int n = 2; n <= 8; ++n) {
    const double onset = nesting_onset(n);
    const double got = o.threshold(n);
    if (std::abs(got - onset) > 1e-9) return describe("N=", n, " onset a=", onset, " threshold=", got);
  }
  return std::nullopt;
}

Outcome analytic_step(std::mt19937_64& rng, const VerifyOptions& o) {
  // classify_analytic has its single jump where the closed form first admits
  // a branch-crossing root
  std::uniform_real_distribution<double> ad(0.01, 6);
  for (int i = 0; i < 400; ++i) {
    const int n = 2 + i % 7;
    const double a = ad(rng);
    const bool nested_by_threshold = !(a < o.threshold(n));
    const bool nested_by_roots = a >= nesting_onset(n);
    if (nested_by_threshold != nested_by_roots) return describe("N=", n, " a=", a);
  }
  return std::nullopt;
}

const std::vector<Property>& sine_properties() {
  static const std::vector<Property> props{
      {"translate_identity", translate_identity},   {"scaling_covariance", scaling_covariance},
      {"closed_form_vs_scan", closed_form_vs_scan}, {"root_cadence", root_cadence},
      {"threshold_formula", threshold_formula},     {"threshold_matches_onset", threshold_matches_onset},
      {"analytic_step_function", analytic_step},
  };
  return props;
}

// ---- classifier -----------------------------------------------------------

ArcFamily rays(int n) {
  ArcFamily f;
  for (int k = 0; k < n; ++k) {
    const double a = 2 * pi * k / n + 0.1;
    f.arcs.push_back(Polyline({{0, 0}, {std::cos(a), std::sin(a)}}));
  }
  return f;
}

Outcome rays_unlinked(std::mt19937_64&, const VerifyOptions&) {
  for (int n = 2; n <= 6; ++n) {
    if (classify_lift(rays(n)).classification != Classification::Unlinked) return describe("lift, N=", n);
    if (classify_enclosure(rays(n)).classification != Classification::Unlinked) return describe("enclosure, N=", n);
  }
  return std::nullopt;
}

Outcome definition_agreement(std::mt19937_64&, const VerifyOptions& o) {
  for (int n = 2; n <= 4; ++n) {
    for (double f : {0.5, 0.9, 1.1, 2.0}) {
      const SineFamilyParams p{n, f * o.threshold(n)};
      const ArcFamily fam = make_sine_family(p);
      const auto l = classify_lift(fam).classification, e = classify_enclosure(fam).classification;
      if (l != e) {
        return describe("N=", n, " a=", p.amplitude, " lift=", classification_name(l), " enclosure=", classification_name(e));
      }
    }
  }
  return std::nullopt;
}

Outcome lift_flips_at_threshold(std::mt19937_64&, const VerifyOptions& o) {
  for (int n = 2; n <= 5; ++n) {
    for (double f : {0.98, 1.02}) {
      const double a = f * o.threshold(n);
      const auto got = classify_lift(make_sine_family({n, a})).classification;
      const auto want = f < 1 ? Classification::Plaited : Classification::Nested;
      if (got != want) return describe("N=", n, " a=", a, " lift=", classification_name(got), " expected ", classification_name(want));
    }
  }
  return std::nullopt;
}

Outcome offset_antisymmetry(std::mt19937_64&, const VerifyOptions&) {
  for (double a : {1.0, 3.0}) {
    const ArcFamily f = make_sine_family({3, a});
    ArcFamily g = f;
    std::swap(g.arcs[0], g.arcs[2]);
    const auto fo = intersection_offsets(f).offsets, go = intersection_offsets(g).offsets;
    // pair (0,2) of g is pair (2,0) of f
    std::set<long> neg;
    for (long m : fo.at({0, 2})) neg.insert(-m);
    if (neg != go.at({0, 2})) return describe("N=3 a=", a, " pair (0,2)");
  }
  return std::nullopt;
}

Outcome rotation_scale_equivariance(std::mt19937_64& rng, const VerifyOptions&) {
  // below ~0.1 the innermost vertices fall under the 1e-12 minimum modulus
  std::uniform_real_distribution<double> sd(-0.5, 3), ad(-pi, pi);
  for (double a : {1.0, 3.0}) {
    const ArcFamily f = make_sine_family({3, a});
    const auto base = classify_lift(f);
    for (int i = 0; i < 3; ++i) {
      const double lam = std::pow(10.0, sd(rng)), phi = ad(rng);
      const ArcFamily g = transform_family(f, lam, phi, {0, 0});
      const auto r = classify_lift(g);
      if (r.classification != base.classification) return describe("a=", a, " scale=", lam, " angle=", phi);
      for (const auto& [pair, offs] : base.offsets) {
        const auto& other = r.offsets.at(pair);
        if (offs.size() != other.size()) return describe("a=", a, " scale=", lam, " angle=", phi, " offsets differ");
        for (std::size_t j = 0; j < offs.size(); ++j) {
          if (offs[j] - offs.front() != other[j] - other.front()) return describe("a=", a, " offsets differ");
        }
      }
    }
  }
  return std::nullopt;
}

Outcome offsets_match_solver(std::mt19937_64&, const VerifyOptions&) {
  for (int n : {2, 3, 5}) {
    for (double a : {0.7, 2.2, 4.5}) {
      const SineFamilyParams p{n, a};
      const ArcFamily f = make_sine_family(p);
      auto shift = [&](int k) {
        const Polyline lift = lift_arc(f.arcs[static_cast<std::size_t>(k)], f.common_endpoint);
        return std::lround((lift[0].y - 2 * lifted_point(p, {k, 0}, p.window.min).y) / (2 * pi));
      };
      for (const auto& [pair, set] : intersection_offsets(f).offsets) {
        std::set<long> geo, solved;
        for (long m : set) geo.insert(m - (shift(pair.first) - shift(pair.second)));
        for (long d = -kDefaultDeltaMax; d <= kDefaultDeltaMax; ++d) {
          if (!solve_lift_intersections(p, pair.first, pair.second, d, p.window).empty()) solved.insert(d);
        }
        if (geo != solved) return describe("N=", n, " a=", a, " pair (", pair.first, ",", pair.second, ")");
      }
    }
  }
  return std::nullopt;
}

const std::vector<Property>& classifier_properties() {
  static const std::vector<Property> props{
      {"rays_unlinked", rays_unlinked},
      {"definition_agreement", definition_agreement},
      {"lift_flips_at_threshold", lift_flips_at_threshold},
      {"offset_antisymmetry", offset_antisymmetry},
      {"rotation_scale_equivariance", rotation_scale_equivariance},
      {"offsets_match_solver", offsets_match_solver},
  };
  return props;
}

// ---- ifs ------------------------------------------------------------------

bool strictly_inside(const std::vector<Rect>& cells, Point2 p) {
  for (const Rect& c : cells) {
    if (c.contains(p, -1e-12 * c.diameter())) return true;
  }
  return false;
}

Outcome stabilization(std::mt19937_64&, const VerifyOptions&) {
  for (const char* name : {"nesting", "plaiting"}) {
    const auto sys = SubstitutionSystem::builtin(name);
    StageCurve prev = stage(sys, 0);
    for (int n = 0; n <= 5; ++n) {
      const StageCurve next = stage(sys, n + 1);
      std::vector<Point2> a, b;
      for (const auto& v : prev.curve.vertices()) if (!strictly_inside(prev.dirty_regions, v)) a.push_back(v);
      for (const auto& v : next.curve.vertices()) if (!strictly_inside(prev.dirty_regions, v)) b.push_back(v);
      if (a != b) return describe(name, " n=", n);
      prev = next;
    }
  }
  return std::nullopt;
}

Outcome count_law(std::mt19937_64&, const VerifyOptions&) {
  const auto sys = SubstitutionSystem::builtin("nesting");
  for (int n = 0; n <= 6; ++n) {
    const auto st = stage(sys, n);
    if (st.dirty_regions.size() != (std::size_t{1} << (n + 1))) return describe("n=", n, " regions=", st.dirty_regions.size());
  }
  return std::nullopt;
}

Outcome cantor_accumulation(std::mt19937_64&, const VerifyOptions&) {
  const auto sys = SubstitutionSystem::builtin("nesting");
  const int n = 6;
  const auto profile = accumulation_profile(sys, stage(sys, n));
  const double r = sys.max_ratio();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int d = 1; d <= n; ++d) {
    const double dist = profile[static_cast<std::size_t>(d - 1)];
    if (dist > sys.domain.diameter() * std::pow(r, d)) return describe("depth ", d, " distance ", dist);
    const double y = std::log(dist);
    sx += d;
    sy += y;
    sxx += d * d;
    sxy += d * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  if (std::abs(slope - std::log(r)) > 0.1 * std::abs(std::log(r))) return describe("fitted slope ", slope, " vs ", std::log(r));
  return std::nullopt;
}

Outcome simplicity(std::mt19937_64&, const VerifyOptions&) {
  for (const char* name : {"nesting", "plaiting"}) {
    const auto sys = SubstitutionSystem::builtin(name);
    for (int n = 0; n <= 6; ++n) {
      if (!self_intersections(stage(sys, n).curve).empty()) return describe(name, " n=", n);
    }
  }
  return std::nullopt;
}

Outcome witnesses(std::mt19937_64&, const VerifyOptions&) {
  const auto nest = SubstitutionSystem::builtin("nesting");
  const auto plait = SubstitutionSystem::builtin("plaiting");
  for (int n = 0; n <= 4; ++n) {
    for (int d = 1; d <= 2; ++d) {
      const auto a = nesting_witness_cycles(nest, stage(nest, n), d);
      for (const auto& w : a) if (!w.enclosed) return describe("nesting n=", n, " word ", word_string(w.word), " not enclosed");
      const auto b = nesting_witness_cycles(plait, stage(plait, n), d);
      for (const auto& w : b) if (w.enclosed) return describe("plaiting n=", n, " word ", word_string(w.word), " enclosed");
    }
  }
  return std::nullopt;
}

Outcome local_classification(std::mt19937_64&, const VerifyOptions&) {
  const auto nest = SubstitutionSystem::builtin("nesting");
  const auto plait = SubstitutionSystem::builtin("plaiting");
  for (int n = 1; n <= 5; ++n) {
    if (classify_local(nest, stage(nest, n), Word{1}).classification != Classification::Nested) return describe("nesting n=", n);
    if (classify_local(plait, stage(plait, n), Word{1}).classification != Classification::Plaited) return describe("plaiting n=", n);
  }
  return std::nullopt;
}

Outcome crossing_persistence(std::mt19937_64&, const VerifyOptions&) {
  const auto sys = SubstitutionSystem::builtin("nesting");
  for (int n = 0; n <= 5; ++n) {
    const auto a = stage(sys, n), b = stage(sys, n + 1);
    std::vector<Point2> pa, pb;
    for (const auto& r : stage_intersections(sys, a)) if (!strictly_inside(a.dirty_regions, r.point)) pa.push_back(r.point);
    for (const auto& r : stage_intersections(sys, b)) if (!strictly_inside(a.dirty_regions, r.point)) pb.push_back(r.point);
    if (pa != pb) return describe("n=", n);
  }
  return std::nullopt;
}

Outcome change_pattern_period(std::mt19937_64&, const VerifyOptions&) {
  for (const char* name : {"nesting", "plaiting"}) {
    const auto p = self_similarity_period(SubstitutionSystem::builtin(name), 6);
    if (p != 1) return describe(name, " period ", p ? std::to_string(*p) : std::string("none"));
  }
  return std::nullopt;
}

const std::vector<Property>& ifs_properties() {
  static const std::vector<Property> props{
      {"stabilization", stabilization},
      {"count_law", count_law},
      {"cantor_accumulation", cantor_accumulation},
      {"simplicity", simplicity},
      {"nesting_witnesses", witnesses},
      {"local_classification", local_classification},
      {"crossing_persistence", crossing_persistence},
      {"change_pattern_period", change_pattern_period},
  };
  return props;
}

void run_suite(const std::string& suite, const std::vector<Property>& props, const VerifyOptions& opts,
               VerifyResult& out) {
  std::uint64_t index = 0;
  for (const auto& p : props) {
    std::mt19937_64 rng(opts.seed + 0x9E3779B97F4A7C15ull * ++index);
    VerifyCase c;
    c.name = p.name;
    c.classname = suite;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = p.run(rng, opts);
      c.passed = !o;
      if (o) c.counterexample = *o;
    } catch (const Error& e) {
      c.passed = false;
      c.counterexample = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.cases.push_back(std::move(c));
  }
}

}  // namespace

double nesting_onset(int n_arcs, double tol) {
  auto crosses = [&](double a) {
    const SineFamilyParams p{n_arcs, a, {0, 2 * pi}};
    for (int k = 0; k < n_arcs; ++k)
      for (int l = k + 1; l < n_arcs; ++l)
        if (!solve_lift_intersections(p, k, l, 1, p.window).empty()) return true;
    return false;
  };
  double lo = 0.0, hi = 16.0;
  while (hi - lo > tol) {
    const double mid = (lo + hi) / 2;
    (crosses(mid) ? hi : lo) = mid;
  }
  return (lo + hi) / 2;
}

std::size_t VerifyResult::failures() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.passed ? 0 : 1;
  return n;
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"sine", "classifier", "ifs"};
  return names;
}

VerifyResult run_verify(std::string_view suite, const VerifyOptions& opts) {
  VerifyResult out;
  out.suite = suite;
  out.seed = opts.seed;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "sine") run_suite("sine", sine_properties(), opts, out), known = true;
  if (all || suite == "classifier") run_suite("classifier", classifier_properties(), opts, out), known = true;
  if (all || suite == "ifs") run_suite("ifs", ifs_properties(), opts, out), known = true;
  if (!known) throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(suite) + "'");
  return out;
}

Json verify_json(const VerifyResult& r) {
  Json cases = Json::array();
  double total = 0.0;
  for (const auto& c : r.cases) {
    Json j{{"name", c.name}, {"classname", c.classname}, {"time", c.seconds}, {"status", c.passed ? "passed" : "failed"}};
    if (!c.passed) j["counterexample"] = c.counterexample;
    cases.push_back(j);
    total += c.seconds;
  }
  return {{"suite", r.suite}, {"seed", r.seed}, {"tests", r.cases.size()}, {"failures", r.failures()},
          {"time", total}, {"testcases", cases}};
}

}  // namespace plait
