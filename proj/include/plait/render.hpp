#pragma once

// Deterministic SVG 1.1 output. Coordinates are mapped to pixels by
// (x - xmin, ymax - y) * scale and printed with six decimals.

#include <string>
#include <string_view>
#include <vector>

#include "plait/geometry.hpp"

namespace plait {

inline constexpr const char* kBlack = "#000000";
inline constexpr const char* kRed = "#CC0000";
inline constexpr const char* kBlue = "#0000CC";

struct SceneCurve {
  // Pieces are drawn as sub-paths of one path element.
  std::vector<Polyline> pieces;
  std::string color = kBlack;
  double stroke_width = 1.0;
};

struct SceneSpec {
  std::vector<SceneCurve> curves;
  std::vector<Rect> boxes;
  Rect viewport{0.0, 0.0, 1.0, 1.0};
  double scale = 100.0;

  // Throws InvalidArgument for a degenerate viewport or non-positive scale.
  void validate() const;
  Point2 to_pixel(Point2 p) const { return {(p.x - viewport.xmin) * scale, (viewport.ymax - p.y) * scale}; }
};

// Throws EmptyScene when there is nothing to draw.
std::string render_svg(const SceneSpec& scene);

// Path elements of an SVG produced by render_svg, in pixel coordinates.
struct SvgPath {
  std::string stroke;
  std::vector<Polyline> subpaths;
};
std::vector<SvgPath> parse_svg_paths(std::string_view svg);
std::size_t count_svg_rects(std::string_view svg);

}  // namespace plait
