#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ocgp/geometry.hpp"
#include "ocgp/object_model.hpp"

namespace ocgp {

/// Physical parameters of one tabletop object (a vertical cylinder).
/// tip_fraction splits contact displacement between tipping (kappa) and
/// planar translation (1 - kappa); fall_angle is the lean at which the
/// object is irrecoverably knocked over.
struct ObjectParams {
    double mass = 0.3;            // kg
    double com_height = 0.1;      // m
    double footprint_radius = 0.03;  // m
    double tip_fraction = 0.5;    // kappa in [0, 1]
    double fall_angle = 0.5;      // rad, in (0, pi/2)

    void validate() const;
};

struct ObjectState {
    Pose pose;
    ObjectParams params;
    double tip_angle = 0.0;  // rad from vertical; pinned at fall_angle once fallen
    bool fallen = false;
    /// Penetration depth already converted to tip/translation during the
    /// current contact episode; clears when contact breaks.
    double absorbed_overlap = 0.0;
};

struct SimParams {
    double max_step = 0.05;   // m, per-step robot travel cap
    double relax = 0.5;       // per-step tip decay factor out of contact
    double sigma_obs = 0.005; // rad, observation noise
    double ee_radius = 0.04;  // m, end-effector disc radius

    void validate() const;
};

/// Immutable snapshot of the quasi-static world. Stepping returns a new
/// state; snapshots are safe to share for concurrent reads.
struct SceneState {
    Pose robot;  // end effector; z fixed by the scene
    std::map<ObjectId, ObjectState> objects;
    Rect bounds;
    SimParams sim;

    Vec2 robot_xy() const { return robot.position.head<2>(); }
};

struct StepResult {
    SceneState state;
    std::map<ObjectId, double> observations;  // noisy tip angles
    double max_tip = 0.0;                     // max over noiseless tip angles
};

/// Moves the end effector in a straight segment to robot_target (meters,
/// workspace frame), resolving contacts at fixed substeps of max_step/10.
/// Objects out of contact relax their tip angle toward zero. Throws
/// OutOfBounds / StepTooLarge on a bad target.
StepResult step(const SceneState& state, const Vec2& robot_target,
                std::uint64_t rng_seed);

/// Folds step() over the waypoints; per-step seeds derive from rng_seed.
std::vector<StepResult> probe_trajectory(const SceneState& state,
                                         const std::vector<Vec2>& waypoints,
                                         std::uint64_t rng_seed);

/// True iff the robot's x,y lie inside the closed goal rectangle.
bool goal_reached(const SceneState& state, const Rect& goal);

}  // namespace ocgp
