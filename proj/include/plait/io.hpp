#pragma once

// JSON encodings shared by the C API, the CLI and the tests.

#include <string>
#include <string_view>

#include "json.hpp"
#include "plait/lift_classifier.hpp"
#include "plait/substitution.hpp"

namespace plait {

using Json = nlohmann::json;

// System file: {"variant", "rectangle": [xmin, ymin, xmax, ymax],
// "maps": [[m00, m01, m10, m11, tx, ty], ...], "template": [[x, y], ...],
// "ports": [[entry, exit], ...], "base": [[x, y], ...] (optional)}.
// Throws ParseError on malformed input, then validates the system.
SubstitutionSystem system_from_json(const Json& j);
SubstitutionSystem system_from_text(std::string_view text);
SubstitutionSystem load_system_file(const std::string& path);
Json system_to_json(const SubstitutionSystem& sys);

Json point_json(Point2 p);
Json points_json(std::span<const Point2> pts);

Json params_json(const SineFamilyParams& p);
Json report_json(const ClassifierReport& r);

enum class Method { Analytic, Lift, Enclosure, All };
Method parse_method(std::string_view name);

// Classification report of the sine family by one method, or by all three
// with an agreement flag.
Json classify_json(const SineFamilyParams& params, Method method, double step = kDefaultClassifyStep,
                   double tol = kIntersectTol);

// Stage curve, dirty regions, base crossings and nesting witnesses at
// depths 1 and 2.
Json stage_json(const SubstitutionSystem& sys, const StageCurve& st);

}  // namespace plait
