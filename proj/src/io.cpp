#include "plait/io.hpp"

#include <fstream>
#include <sstream>

#include "plait/error.hpp"

namespace plait {

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

double num(const Json& j, const std::string& what) {
  if (!j.is_number()) parse_fail(what + " must be a number");
  return j.get<double>();
}

Point2 point_from(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) parse_fail(what + " must be an [x, y] pair");
  return {num(j[0], what), num(j[1], what)};
}

Polyline polyline_from(const Json& j, const std::string& what) {
  if (!j.is_array()) parse_fail(what + " must be an array of points");
  std::vector<Point2> pts;
  for (const auto& p : j) pts.push_back(point_from(p, what));
  try {
    return Polyline(std::move(pts));
  } catch (const Error& e) {
    parse_fail(what + ": " + e.what());
  }
}

std::string pair_key(const ArcPair& p) { return std::to_string(p.first) + "," + std::to_string(p.second); }

}  // namespace

Json point_json(Point2 p) { return Json::array({p.x, p.y}); }

Json points_json(std::span<const Point2> pts) {
  Json a = Json::array();
  for (const Point2& p : pts) a.push_back(point_json(p));
  return a;
}

SubstitutionSystem system_from_json(const Json& j) {
  if (!j.is_object()) parse_fail("system must be a JSON object");
  for (const char* key : {"rectangle", "maps", "template", "ports"}) {
    if (!j.contains(key)) parse_fail(std::string("missing key '") + key + "'");
  }
  SubstitutionSystem s;
  s.variant = j.value("variant", std::string("custom"));
  const Json& r = j["rectangle"];
  if (!r.is_array() || r.size() != 4) parse_fail("rectangle must be [xmin, ymin, xmax, ymax]");
  s.domain = {num(r[0], "rectangle"), num(r[1], "rectangle"), num(r[2], "rectangle"), num(r[3], "rectangle")};
  const Json& maps = j["maps"];
  if (!maps.is_array()) parse_fail("maps must be an array");
  for (const auto& m : maps) {
    if (!m.is_array() || m.size() != 6) parse_fail("each map is [m00, m01, m10, m11, tx, ty]");
    s.maps.push_back(Contraction::make({num(m[0], "map"), num(m[1], "map"), num(m[2], "map"), num(m[3], "map")},
                                       {num(m[4], "map"), num(m[5], "map")}));
  }
  s.templ = polyline_from(j["template"], "template");
  if (j.contains("base")) {
    s.base = polyline_from(j["base"], "base");
  } else {
    const double y = (s.domain.ymin + s.domain.ymax) / 2;
    s.base = Polyline({{s.domain.xmin, y}, {s.domain.xmax, y}});
  }
  const Json& ports = j["ports"];
  if (!ports.is_array()) parse_fail("ports must be an array");
  for (const auto& p : ports) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned()) {
      parse_fail("each port is [entry_index, exit_index]");
    }
    s.ports.push_back({p[0].get<std::size_t>(), p[1].get<std::size_t>()});
  }
  s.validate();
  return s;
}

SubstitutionSystem system_from_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  return system_from_json(j);
}

SubstitutionSystem load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open system file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return system_from_text(ss.str());
}

Json system_to_json(const SubstitutionSystem& sys) {
  Json maps = Json::array();
  for (const auto& m : sys.maps) {
    const auto& l = m.linear();
    maps.push_back({l[0], l[1], l[2], l[3], m.translation().x, m.translation().y});
  }
  Json ports = Json::array();
  for (const auto& p : sys.ports) ports.push_back({p.entry, p.exit});
  return {{"variant", sys.variant},
          {"rectangle", {sys.domain.xmin, sys.domain.ymin, sys.domain.xmax, sys.domain.ymax}},
          {"maps", maps},
          {"template", points_json(sys.templ.vertices())},
          {"ports", ports},
          {"base", points_json(sys.base.vertices())}};
}

Json params_json(const SineFamilyParams& p) {
  return {{"n_arcs", p.n_arcs}, {"amplitude", p.amplitude}, {"window", {p.window.min, p.window.max}}};
}

Json report_json(const ClassifierReport& r) {
  Json offsets = Json::object();
  for (const auto& [pair, list] : r.offsets) offsets[pair_key(pair)] = list;
  Json j{{"classification", classification_name(r.classification)}, {"offsets", offsets}, {"marginal", r.marginal}};
  if (!r.witness_cycle.empty()) j["witness_cycle"] = points_json(r.witness_cycle);
  return j;
}

Method parse_method(std::string_view name) {
  if (name == "analytic") return Method::Analytic;
  if (name == "lift") return Method::Lift;
  if (name == "enclosure") return Method::Enclosure;
  if (name == "all") return Method::All;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

namespace {

Json analytic_json(const SineFamilyParams& p) {
  const Classification c = classify_analytic(p);
  Json offsets = Json::object();
  bool tangent = false;
  for (int k = 0; k < p.n_arcs; ++k) {
    for (int l = k + 1; l < p.n_arcs; ++l) {
      Json list = Json::array();
      for (long d = -kDefaultDeltaMax; d <= kDefaultDeltaMax; ++d) {
        const auto roots = solve_lift_intersections(p, k, l, d, p.window);
        if (roots.empty()) continue;
        list.push_back(d);
        for (const auto& r : roots) tangent |= r.tangent;
      }
      offsets[pair_key({k, l})] = list;
    }
  }
  return {{"classification", classification_name(c)}, {"offsets", offsets}, {"marginal", tangent}};
}

}  // namespace

Json classify_json(const SineFamilyParams& params, Method method, double step, double tol) {
  params.validate();
  if (params.amplitude == 0.0) throw Error(ErrorCode::DegenerateAmplitude, "amplitude must be nonzero");
  Json out{{"params", params_json(params)}};
  switch (method) {
    case Method::Analytic:
      out["method"] = "analytic";
      out.update(analytic_json(params));
      return out;
    case Method::Lift:
      out["method"] = "lift";
      out.update(report_json(classify_lift(make_sine_family(params, step), tol)));
      return out;
    case Method::Enclosure:
      out["method"] = "enclosure";
      out.update(report_json(classify_enclosure(make_sine_family(params, step), tol)));
      return out;
    case Method::All:
      break;
  }
  const ArcFamily family = make_sine_family(params, step);
  const Json a = analytic_json(params);
  const Json l = report_json(classify_lift(family, tol));
  const Json e = report_json(classify_enclosure(family, tol));
  out["method"] = "all";
  out.update(l);
  out["methods"] = {{"analytic", a}, {"lift", l}, {"enclosure", e}};
  out["agree"] = a["classification"] == l["classification"] && l["classification"] == e["classification"];
  return out;
}

Json stage_json(const SubstitutionSystem& sys, const StageCurve& st) {
  Json regions = Json::array();
  for (std::size_t i = 0; i < st.dirty_regions.size(); ++i) {
    const Rect& r = st.dirty_regions[i];
    regions.push_back({{"word", word_string(st.dirty_words[i])}, {"rect", {r.xmin, r.ymin, r.xmax, r.ymax}}});
  }
  // Depth-n cells: where this stage differs from the previous one.
  Json changed = Json::array();
  if (st.n >= 1) {
    for (const Word& w : words_of_length(sys, st.n)) {
      const Rect r = compose(sys, w).image(sys.domain);
      changed.push_back({{"word", word_string(w)}, {"rect", {r.xmin, r.ymin, r.xmax, r.ymax}}});
    }
  }
  Json crossings = Json::array();
  for (const auto& r : stage_intersections(sys, st)) {
    crossings.push_back({{"point", point_json(r.point)}, {"t_base", r.t_first}, {"t_curve", r.t_second}});
  }
  Json witnesses = Json::array();
  for (int depth = 1; depth <= 2; ++depth) {
    for (const auto& w : nesting_witness_cycles(sys, st, depth)) {
      witnesses.push_back({{"depth", depth}, {"word", word_string(w.word)}, {"point", point_json(w.point)},
                           {"enclosed", w.enclosed}});
    }
  }
  const auto local = classify_local(sys, st, Word{1});
  Json pairs = Json::object();
  for (const auto& [name, c] : local.pairs) pairs[name] = classification_name(c);
  return {{"variant", sys.variant},
          {"stage", st.n},
          {"vertices", points_json(st.curve.vertices())},
          {"dirty_regions", regions},
          {"changed_regions", changed},
          {"intersections", crossings},
          {"witnesses", witnesses},
          {"local", {{"word", "1"}, {"classification", classification_name(local.classification)}, {"pairs", pairs}}}};
}

}  // namespace plait
