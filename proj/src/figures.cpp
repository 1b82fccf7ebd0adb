#include "plait/figures.hpp"

#include <cmath>

#include "plait/error.hpp"

namespace plait {

namespace {

const char* palette(int k) {
  static const char* colors[] = {kBlack, kRed, kBlue};
  return colors[k % 3];
}

}  // namespace

SceneSpec lifts_scene(const SineFamilyParams& params) {
  params.validate();
  SceneSpec s;
  const Window w = params.window;
  const int samples = 2000;
  for (int k = 0; k < params.n_arcs; ++k) {
    std::vector<Point2> pts;
    for (int i = 0; i <= samples; ++i) {
      pts.push_back(lifted_point(params, {k, 0}, w.min + w.length() * i / samples));
    }
    s.curves.push_back({{Polyline::from_points(std::move(pts))}, palette(k), 1.5});
  }
  const double a = std::abs(params.amplitude);
  s.viewport = {w.min, -a - 0.5, w.max, a + 0.5};
  s.scale = 60.0;
  return s;
}

double arcs_clip_radius(const SceneSpec& scene) { return 1e-4 * scene.viewport.diameter(); }

SceneSpec arcs_scene(const SineFamilyParams& params) {
  params.validate();
  SceneSpec s;
  const double r = std::exp(params.window.max) * 1.05;
  s.viewport = {-r, -r, r, r};
  s.scale = 500.0 / r;
  const double clip = arcs_clip_radius(s);
  for (int k = 0; k < params.n_arcs; ++k) {
    const Polyline g = sample_gamma(params, k, kFigureStep);
    s.curves.push_back({clip_outside_disc(g, {0, 0}, clip), palette(k), 1.0});
  }
  return s;
}

SceneSpec stage_scene(const SubstitutionSystem& sys, const StageCurve& st) {
  SceneSpec s;
  s.curves.push_back({{sys.base}, kBlack, 1.0});
  s.curves.push_back({{st.curve}, kRed, 1.0});
  if (st.n >= 1) s.boxes.push_back(compose(sys, Word(static_cast<std::size_t>(st.n), 1)).image(sys.domain));
  const Rect& d = sys.domain;
  const double m = 0.05 * d.diameter();
  s.viewport = {d.xmin - m, d.ymin - m, d.xmax + m, d.ymax + m};
  s.scale = 800.0 / s.viewport.width();
  return s;
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"lifts-n3", "plaiting-n3-a1", "nesting-n3-a3", "stage-1",
                                              "stage-2",  "stage-3",        "stage-4"};
  return names;
}

SceneSpec figure_scene(std::string_view name) {
  if (name == "lifts-n3") return lifts_scene({3, 1.0, kLiftFigureWindow});
  if (name == "plaiting-n3-a1") return arcs_scene({3, 1.0, kArcFigureWindow});
  if (name == "nesting-n3-a3") return arcs_scene({3, 3.0, kArcFigureWindow});
  if (name.starts_with("stage-") && name.size() == 7 && name[6] >= '1' && name[6] <= '4') {
    const auto sys = SubstitutionSystem::builtin("nesting");
    return stage_scene(sys, stage(sys, name[6] - '0'));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown figure '" + std::string(name) + "'");
}

}  // namespace plait
