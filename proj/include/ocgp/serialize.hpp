#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "ocgp/object_model.hpp"
#include "ocgp/planner.hpp"
#include "ocgp/sim.hpp"

namespace ocgp {

using Json = nlohmann::json;

Json to_json(const Vec2& v);
Json to_json(const Vec3& v);
Json to_json(const Quaternion& q);
Json to_json(const Pose& p);
Json to_json(const Rect& r);
Json to_json(const ObjectState& obj);
Json to_json(const SceneState& state);
Json to_json(const CompositePrediction& pred);
Json to_json(const StepResult& result);
Json to_json(const StepRecord& record, int index);

Vec2 vec2_from_json(const Json& j);
Vec3 vec3_from_json(const Json& j);
Quaternion quat_from_json(const Json& j);
Rect rect_from_json(const Json& j);

/// Line-delimited records, one StepResult per line.
void write_replay_log(const std::filesystem::path& path,
                      const std::vector<StepResult>& results);

/// Line-delimited records, one planner step per line.
void write_episode_log(const std::filesystem::path& path, const EpisodeReport& report);

}  // namespace ocgp
