#pragma once

// Scenes for the six figures: the lifts Gamma_{k,0} for N = 3, the
// projected families for N = 3 at a = 1 and a = 3, and Stages 1-4 of the
// nesting substitution.

#include <string>
#include <string_view>
#include <vector>

#include "plait/render.hpp"
#include "plait/sine_family.hpp"
#include "plait/substitution.hpp"

namespace plait {

inline constexpr Window kLiftFigureWindow{-2 * std::numbers::pi, 2 * std::numbers::pi};
inline constexpr Window kArcFigureWindow{-6 * std::numbers::pi, std::numbers::pi};
inline constexpr double kFigureStep = 0.01;

// Gamma_{k,0}, k < N, drawn in the (x, y) plane.
SceneSpec lifts_scene(const SineFamilyParams& params);
// gamma_k = exp(Gamma_{k,0}) u {0}, clipped near 0 at 1e-4 of the viewport
// diameter.
SceneSpec arcs_scene(const SineFamilyParams& params);
double arcs_clip_radius(const SceneSpec& scene);
// Base in black, stage curve in red, the depth-n cell 1...1 outlined.
SceneSpec stage_scene(const SubstitutionSystem& sys, const StageCurve& st);

// "lifts-n3", "plaiting-n3-a1", "nesting-n3-a3", "stage-1" ... "stage-4"
const std::vector<std::string>& figure_names();
SceneSpec figure_scene(std::string_view name);

}  // namespace plait
