#include "ocgp/serialize.hpp"

#include <fstream>

#include "ocgp/errors.hpp"

namespace ocgp {

Json to_json(const Vec2& v) { return Json::array({v.x(), v.y()}); }

Json to_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

Json to_json(const Quaternion& q) { return Json::array({q.x, q.y, q.z, q.w}); }

Json to_json(const Pose& p) {
    return Json{{"position", to_json(p.position)},
                {"orientation", to_json(p.orientation)}};
}

Json to_json(const Rect& r) {
    return Json{{"min", to_json(r.min)}, {"max", to_json(r.max)}};
}

Json to_json(const ObjectState& obj) {
    return Json{{"pose", to_json(obj.pose)},
                {"tip_angle", obj.tip_angle},
                {"fallen", obj.fallen},
                {"absorbed_overlap", obj.absorbed_overlap}};
}

Json to_json(const SceneState& state) {
    Json objects = Json::object();
    for (const auto& [id, obj] : state.objects) {
        objects[std::to_string(id)] = to_json(obj);
    }
    return Json{{"robot", to_json(state.robot)}, {"objects", std::move(objects)}};
}

Json to_json(const CompositePrediction& pred) {
    Json j{{"mean", pred.mean}, {"std", pred.std}, {"ucb", pred.ucb}};
    j["argmax_object"] = pred.argmax_object ? Json(*pred.argmax_object) : Json(nullptr);
    return j;
}

Json to_json(const StepResult& result) {
    Json obs = Json::object();
    for (const auto& [id, y] : result.observations) {
        obs[std::to_string(id)] = y;
    }
    return Json{{"state", to_json(result.state)},
                {"observations", std::move(obs)},
                {"max_tip", result.max_tip}};
}

Json to_json(const StepRecord& record, int index) {
    return Json{{"index", index},
                {"kind", to_string(record.plan.kind)},
                {"target", to_json(record.plan.target)},
                {"predicted", to_json(record.plan.predicted)},
                {"observed_max_tip", record.observed_max_tip},
                {"true_max_tip", record.true_max_tip},
                {"robot_after", to_json(record.robot_after)}};
}

Vec2 vec2_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw ConfigError("expected [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Vec3 vec3_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3) {
        throw ConfigError("expected [x, y, z]");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Quaternion quat_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4) {
        throw ConfigError("expected quaternion [x, y, z, w]");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
            j[3].get<double>()};
}

Rect rect_from_json(const Json& j) {
    return {vec2_from_json(j.at("min")), vec2_from_json(j.at("max"))};
}

void write_replay_log(const std::filesystem::path& path,
                      const std::vector<StepResult>& results) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
    for (const StepResult& r : results) {
        out << to_json(r).dump() << '\n';
    }
}

void write_episode_log(const std::filesystem::path& path, const EpisodeReport& report) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
    for (std::size_t i = 0; i < report.steps.size(); ++i) {
        out << to_json(report.steps[i], static_cast<int>(i)).dump() << '\n';
    }
}

}  // namespace ocgp
