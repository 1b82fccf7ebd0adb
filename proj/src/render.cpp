#include "plait/render.hpp"

#include <cstdio>
#include <cstdlib>

#include "plait/error.hpp"

namespace plait {

namespace {

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  // avoid "-0.000000"
  if (std::string_view(buf) == "-0.000000") return "0.000000";
  return buf;
}

}  // namespace

void SceneSpec::validate() const {
  if (!(viewport.width() > 0) || !(viewport.height() > 0)) {
    throw Error(ErrorCode::InvalidArgument, "viewport must have positive width and height");
  }
  if (!(scale > 0) || !std::isfinite(scale)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
}

std::string render_svg(const SceneSpec& scene) {
  scene.validate();
  bool any = !scene.boxes.empty();
  for (const auto& c : scene.curves) any = any || !c.pieces.empty();
  if (!any) throw Error(ErrorCode::EmptyScene, "scene has no curves and no boxes");

  const double w = scene.viewport.width() * scene.scale;
  const double h = scene.viewport.height() * scene.scale;
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fixed(w) + "\" height=\"" +
         fixed(h) + "\" viewBox=\"0 0 " + fixed(w) + " " + fixed(h) + "\">\n";
  for (std::size_t i = 0; i < scene.curves.size(); ++i) {
    const auto& c = scene.curves[i];
    if (c.pieces.empty()) continue;
    out += "<g id=\"curve-" + std::to_string(i) + "\" fill=\"none\" stroke=\"" + c.color + "\" stroke-width=\"" +
           fixed(c.stroke_width) + "\">\n<path d=\"";
    bool first_piece = true;
    for (const Polyline& p : c.pieces) {
      if (!first_piece) out += " ";
      first_piece = false;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const Point2 q = scene.to_pixel(p[k]);
        out += k == 0 ? "M" : " L";
        out += fixed(q.x) + "," + fixed(q.y);
      }
    }
    out += "\"/>\n</g>\n";
  }
  if (!scene.boxes.empty()) {
    out += "<g id=\"boxes\" fill=\"none\" stroke=\"" + std::string(kBlack) + "\" stroke-width=\"1.000000\">\n";
    for (const Rect& r : scene.boxes) {
      const Point2 a = scene.to_pixel({r.xmin, r.ymax});
      out += "<rect x=\"" + fixed(a.x) + "\" y=\"" + fixed(a.y) + "\" width=\"" + fixed(r.width() * scene.scale) +
             "\" height=\"" + fixed(r.height() * scene.scale) + "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

std::vector<SvgPath> parse_svg_paths(std::string_view svg) {
  std::vector<SvgPath> out;
  auto attr = [](std::string_view tag, std::string_view name) -> std::string_view {
    const std::string key = " " + std::string(name) + "=\"";
    const auto at = tag.find(key);
    if (at == std::string_view::npos) return {};
    const auto from = at + key.size();
    return tag.substr(from, tag.find('"', from) - from);
  };
  std::size_t pos = 0;
  while ((pos = svg.find("<path ", pos)) != std::string_view::npos) {
    const auto g = svg.rfind("<g ", pos);
    SvgPath p;
    if (g != std::string_view::npos) p.stroke = attr(svg.substr(g, svg.find('>', g) - g), "stroke");
    const auto tag_end = svg.find("/>", pos);
    const std::string d(attr(svg.substr(pos, tag_end - pos), "d"));
    pos = tag_end;

    std::vector<Point2> cur;
    auto flush = [&] {
      if (cur.size() >= 2) p.subpaths.push_back(Polyline::from_points(std::move(cur)));
      cur.clear();
    };
    const char* c = d.c_str();
    while (*c) {
      if (*c == 'M' || *c == 'L') {
        if (*c == 'M') flush();
        char* next = nullptr;
        const double x = std::strtod(c + 1, &next);
        if (*next != ',') throw Error(ErrorCode::ParseError, "malformed path coordinate");
        const double y = std::strtod(next + 1, &next);
        cur.push_back({x, y});
        c = next;
      } else {
        ++c;
      }
    }
    flush();
    out.push_back(std::move(p));
  }
  return out;
}

std::size_t count_svg_rects(std::string_view svg) {
  std::size_t n = 0;
  for (std::size_t pos = svg.find("<rect "); pos != std::string_view::npos; pos = svg.find("<rect ", pos + 1)) ++n;
  return n;
}

}  // namespace plait
