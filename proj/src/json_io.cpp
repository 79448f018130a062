#include <cantor/json_io.hpp>

#include <cantor/error.hpp>

namespace cantor {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::malformed_input, what); }

std::string require_string(const Json& j, const char* what) {
    if (!j.is_string()) bad(std::string(what) + " must be a string, got " + j.dump());
    return j.get<std::string>();
}

Json points_to_json(const auto& points) {
    Json out = Json::array();
    for (const auto& p : points) out.push_back(p.str());
    return out;
}

Json stems_to_json(const std::vector<CylinderWord>& stems) {
    Json out = Json::array();
    for (const auto& w : stems) out.push_back(w.str());
    return out;
}

}  // namespace

Json parse_json_text(std::string_view text, std::string_view source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, column = 1;
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        bad(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
    }
}

Json complex_to_json(const CylinderComplex& c) {
    if (c.is_full()) return "F";
    if (c.is_empty()) return "E";
    Json out = Json::object();
    out["0"] = complex_to_json(c.child(0));
    out["1"] = complex_to_json(c.child(1));
    return out;
}

CylinderComplex complex_from_json(const Json& j) {
    if (j.is_string()) {
        const auto tag = j.get<std::string>();
        if (tag == "F") return CylinderComplex::full();
        if (tag == "E") return CylinderComplex::empty();
        bad("complex leaf must be \"F\" or \"E\", got \"" + tag + "\"");
    }
    if (!j.is_object() || j.size() != 2 || !j.contains("0") || !j.contains("1")) {
        bad("complex node must be {\"0\": …, \"1\": …}, got " + j.dump());
    }
    return make_split(complex_from_json(j.at("0")), complex_from_json(j.at("1")));
}

Point point_from_json(const Json& j) { return Point::parse(require_string(j, "point")); }

TransfinitePoint transfinite_from_json(const Json& j) {
    return TransfinitePoint::parse(require_string(j, "transfinite point"));
}

std::vector<Point> points_from_json(const Json& j) {
    if (!j.is_array()) bad("expected a list of points, got " + j.dump());
    std::vector<Point> out;
    for (const auto& p : j) out.push_back(point_from_json(p));
    return out;
}

Json pointed_set_to_json(const PointedSet& s) {
    Json out = Json::object();
    out["body"] = complex_to_json(s.body());
    out["extras"] = points_to_json(s.extras());
    out["holes"] = points_to_json(s.holes());
    return out;
}

PointedSet pointed_set_from_json(const Json& j) {
    if (!j.is_object()) bad("pointed set must be an object, got " + j.dump());
    for (const auto& [key, _] : j.items()) {
        if (key != "body" && key != "extras" && key != "holes") bad("unknown pointed set field \"" + key + "\"");
    }
    const CylinderComplex body = j.contains("body") ? complex_from_json(j.at("body")) : CylinderComplex::empty();
    std::set<Point> extras, holes;
    if (j.contains("extras")) {
        for (auto& p : points_from_json(j.at("extras"))) extras.insert(p);
    }
    if (j.contains("holes")) {
        for (auto& p : points_from_json(j.at("holes"))) holes.insert(p);
    }
    return PointedSet(body, std::move(extras), std::move(holes));
}

Json schedule_to_json(const DeletionSchedule& s) {
    Json out = Json::array();
    for (const auto& e : s.entries()) {
        Json entry = Json::object();
        entry["target"] = e.target.str();
        entry["r"] = e.offset;
        if (e.stem) entry["stem"] = e.stem->str();
        out.push_back(std::move(entry));
    }
    return out;
}

DeletionSchedule schedule_from_json(const Json& j) {
    if (!j.is_array()) bad("schedule must be a list of entries, got " + j.dump());
    std::vector<DeletionEntry> entries;
    for (const auto& item : j) {
        if (!item.is_object() || !item.contains("target")) bad("schedule entry needs a \"target\": " + item.dump());
        DeletionEntry e;
        e.target = point_from_json(item.at("target"));
        if (item.contains("r")) {
            const auto& r = item.at("r");
            if (!r.is_number_unsigned()) bad("\"r\" must be a positive integer, got " + r.dump());
            e.offset = r.get<std::size_t>();
        }
        if (item.contains("stem")) e.stem = BitWord::parse(require_string(item.at("stem"), "stem"));
        for (const auto& [key, _] : item.items()) {
            if (key != "target" && key != "r" && key != "stem") bad("unknown schedule field \"" + key + "\"");
        }
        entries.push_back(std::move(e));
    }
    return DeletionSchedule(std::move(entries));
}

Json step_to_json(const StepRecord& r) {
    Json out = Json::object();
    out["target"] = r.target.str();
    out["r"] = r.offset;
    out["split_node"] = r.split_node;
    out["deleted"] = r.deleted ? Json(r.deleted->str()) : Json(nullptr);
    return out;
}

Json state_to_json(const ConstructionState& s) {
    Json out = Json::object();
    out["stage"] = s.stage;
    Json stages = Json::array();
    for (std::size_t k = 0; k < s.stages.size(); ++k) {
        Json st = Json::object();
        st["stage"] = k;
        st["measure"] = to_string(s.stages[k].measure());
        if (k > 0) st["step"] = step_to_json(s.steps[k - 1]);
        stages.push_back(std::move(st));
    }
    out["stages"] = std::move(stages);
    out["deleted"] = stems_to_json(s.deleted);
    out["witnesses"] = points_to_json(s.witnesses);
    out["final"] = complex_to_json(s.current);
    out["final_measure"] = to_string(s.current.measure());
    return out;
}

Json state_to_json(const TransfiniteConstructionState& s) {
    Json out = Json::object();
    out["stage"] = s.stage.str();
    Json stages = Json::array();
    std::size_t step = 0;
    for (std::size_t k = 0; k < s.stages.size(); ++k) {
        Json st = Json::object();
        const OrdinalIndex idx = s.stage_indices[k];
        st["stage"] = idx.str();
        st["measure"] = to_string(s.stages[k].measure());
        if (idx.is_successor()) st["step"] = step_to_json(s.steps[step++]);
        stages.push_back(std::move(st));
    }
    out["stages"] = std::move(stages);
    Json limits = Json::array();
    for (const auto& l : s.limits) {
        limits.push_back(Json{{"stage", l.stage.str()}, {"witness", l.witness.str()}, {"preserved", l.preserved.str()}});
    }
    out["limits"] = std::move(limits);
    out["deleted"] = stems_to_json(s.deleted);
    out["witnesses"] = points_to_json(s.witnesses);
    out["final"] = complex_to_json(s.current);
    out["final_measure"] = to_string(s.current.measure());
    return out;
}

Json trace_to_json(const std::vector<BisectionStep>& trace) {
    Json out = Json::array();
    for (const auto& s : trace) {
        out.push_back(Json{{"a", s.a.str()}, {"b", s.b.str()}, {"mid", s.mid.str()}, {"branch", to_string(s.branch)}});
    }
    return out;
}

}  // namespace cantor
