#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "ocgp/field.hpp"
#include "ocgp/planner.hpp"
#include "ocgp/serialize.hpp"

namespace ocgp {

struct RobotConfig {
    Vec2 start = Vec2::Zero();
    double z = 0.0;
    Quaternion orientation;
};

struct ObjectConfig {
    ObjectId id = 0;
    Vec3 position = Vec3::Zero();
    Quaternion orientation;
    ObjectParams params;
};

/// Versioned scene description consumed by every subcommand. See the README
/// for the schema; values the source material leaves open ship as documented
/// defaults.
struct SceneConfig {
    int version = 1;
    std::uint64_t seed = 0;
    Rect workspace;
    RobotConfig robot;
    SimParams sim;
    KernelParams gp;
    double prior_mean = 0.0;
    double beta = 2.0;
    InputSpec input_spec = InputSpec::kPlanarXY;
    std::optional<double> proximity_radius;
    std::vector<ObjectConfig> objects;
    PlannerConfig planner;
    bool has_goal = false;
    int grid_nx = 100;
    int grid_ny = 100;
    std::vector<Vec2> trajectory;

    void validate() const;
    GridSpec grid_spec() const { return {grid_nx, grid_ny, workspace}; }
};

SceneConfig scene_config_from_json(const Json& j);
Json scene_config_to_json(const SceneConfig& cfg);
SceneConfig load_scene_config(const std::filesystem::path& path);

SceneState build_scene(const SceneConfig& cfg);
ObjectCentricModel build_object_centric_model(const SceneConfig& cfg);
FullStateModel build_full_state_model(const SceneConfig& cfg);

}  // namespace ocgp
