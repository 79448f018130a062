#pragma once

#include <cantor/cantortrie.hpp>
#include <cantor/construction.hpp>
#include <cantor/umetric.hpp>

#include <json.hpp>

#include <string>
#include <string_view>

namespace cantor {

using Json = nlohmann::ordered_json;

/// Parses JSON text. Syntax errors throw malformed_input naming the source,
/// line and column.
Json parse_json_text(std::string_view text, std::string_view source = "<input>");

/// Nested {"0": …, "1": …} objects with "F" and "E" leaves.
Json complex_to_json(const CylinderComplex& c);
CylinderComplex complex_from_json(const Json& j);

Point point_from_json(const Json& j);
TransfinitePoint transfinite_from_json(const Json& j);
std::vector<Point> points_from_json(const Json& j);

/// {"body": complex, "extras": [points], "holes": [points]}
Json pointed_set_to_json(const PointedSet& s);
PointedSet pointed_set_from_json(const Json& j);

/// [{"target": "pre:period", "r": k, "stem": "0101"}, …]; "r" defaults to 1
/// and "stem" is optional.
Json schedule_to_json(const DeletionSchedule& s);
DeletionSchedule schedule_from_json(const Json& j);

Json step_to_json(const StepRecord& r);
Json state_to_json(const ConstructionState& s);
Json state_to_json(const TransfiniteConstructionState& s);
Json trace_to_json(const std::vector<BisectionStep>& trace);

}  // namespace cantor
