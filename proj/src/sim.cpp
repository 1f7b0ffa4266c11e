#include "ocgp/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include "ocgp/errors.hpp"
#include "ocgp/rng.hpp"

namespace ocgp {

namespace {

constexpr double kLengthEps = 1e-9;
constexpr double kTipSnap = 1e-9;  // rad; relaxed tips below this read as upright
constexpr int kMaxShovePasses = 1000;

double true_tip(const ObjectState& obj) {
    return obj.fallen ? obj.params.fall_angle : obj.tip_angle;
}

// Robot-object contact at the current end-effector position. Overlap depth
// beyond what this contact episode already absorbed is new work, split
// kappa into tipping and (1-kappa) into translation away from the robot.
void resolve_robot_contacts(SceneState& s, std::vector<ObjectId>& pushed,
                            std::map<ObjectId, bool>& contacted) {
    const Vec2 ee = s.robot_xy();
    for (auto& [id, obj] : s.objects) {
        const Vec2 center = obj.pose.position.head<2>();
        const Vec2 diff = center - ee;
        const double dist = diff.norm();
        const double pen = obj.params.footprint_radius + s.sim.ee_radius - dist;
        if (pen <= 0.0) {
            continue;
        }
        contacted[id] = true;
        const double depth = pen - obj.absorbed_overlap;
        if (depth <= 0.0) {
            continue;
        }
        const Vec2 normal = dist > kLengthEps ? Vec2(diff / dist) : Vec2(1.0, 0.0);
        const double kappa = obj.params.tip_fraction;
        const Vec2 shift = (1.0 - kappa) * depth * normal;
        if (shift.squaredNorm() > 0.0) {
            obj.pose.position.head<2>() += shift;
            pushed.push_back(id);
        }
        obj.absorbed_overlap += kappa * depth;
        if (!obj.fallen) {
            obj.tip_angle +=
                std::asin(std::min(kappa * depth / obj.params.com_height, 1.0));
            if (obj.tip_angle >= obj.params.fall_angle) {
                obj.fallen = true;
                obj.tip_angle = obj.params.fall_angle;
            }
        }
    }
}

// Object-object overlap: the downstream object is translated out along the
// center line, then may shove further objects in turn.
void resolve_object_shoves(SceneState& s, const std::vector<ObjectId>& pushed) {
    std::deque<ObjectId> queue(pushed.begin(), pushed.end());
    int passes = 0;
    while (!queue.empty() && ++passes <= kMaxShovePasses) {
        const ObjectId a_id = queue.front();
        queue.pop_front();
        const ObjectState& a = s.objects.at(a_id);
        for (auto& [b_id, b] : s.objects) {
            if (b_id == a_id) {
                continue;
            }
            const Vec2 diff = b.pose.position.head<2>() - a.pose.position.head<2>();
            const double dist = diff.norm();
            const double overlap =
                a.params.footprint_radius + b.params.footprint_radius - dist;
            if (overlap <= 0.0) {
                continue;
            }
            const Vec2 normal = dist > kLengthEps ? Vec2(diff / dist) : Vec2(1.0, 0.0);
            b.pose.position.head<2>() += overlap * normal;
            queue.push_back(b_id);
        }
    }
}

}  // namespace

void ObjectParams::validate() const {
    if (!(tip_fraction >= 0.0 && tip_fraction <= 1.0) || !(footprint_radius > 0.0) ||
        !(com_height > 0.0) || !(fall_angle > 0.0 && fall_angle < M_PI / 2.0)) {
        throw ConfigError("object params require 0 <= tip_fraction <= 1, "
                          "footprint_radius > 0, com_height > 0, 0 < fall_angle < pi/2");
    }
}

void SimParams::validate() const {
    if (!(max_step > 0.0) || !(relax >= 0.0 && relax < 1.0) || !(sigma_obs >= 0.0) ||
        !(ee_radius > 0.0)) {
        throw ConfigError("sim params require max_step > 0, 0 <= relax < 1, "
                          "sigma_obs >= 0, ee_radius > 0");
    }
}

StepResult step(const SceneState& state, const Vec2& robot_target,
                std::uint64_t rng_seed) {
    if (!state.bounds.contains(robot_target)) {
        throw OutOfBounds("robot target outside workspace bounds");
    }
    const Vec2 start = state.robot_xy();
    const Vec2 delta = robot_target - start;
    const double dist = delta.norm();
    if (dist > state.sim.max_step * (1.0 + 1e-9)) {
        throw StepTooLarge("step length exceeds max_step");
    }

    StepResult result;
    result.state = state;
    SceneState& s = result.state;

    const double substep_len = state.sim.max_step / 10.0;
    const int n_sub =
        dist <= kLengthEps ? 1 : static_cast<int>(std::ceil(dist / substep_len - 1e-12));

    std::vector<ObjectId> pushed;
    std::map<ObjectId, bool> contacted;
    for (int i = 1; i <= n_sub; ++i) {
        s.robot.position.head<2>() =
            start + delta * (static_cast<double>(i) / n_sub);
        pushed.clear();
        resolve_robot_contacts(s, pushed, contacted);
        resolve_object_shoves(s, pushed);
    }

    for (auto& [id, obj] : s.objects) {
        if (contacted.count(id)) {
            continue;
        }
        obj.absorbed_overlap = 0.0;
        if (!obj.fallen) {
            obj.tip_angle *= s.sim.relax;
            if (obj.tip_angle < kTipSnap) {
                obj.tip_angle = 0.0;
            }
        }
    }

    std::mt19937_64 rng(rng_seed);
    std::normal_distribution<double> unit_normal(0.0, 1.0);
    result.max_tip = 0.0;
    for (const auto& [id, obj] : s.objects) {
        const double tip = true_tip(obj);
        result.observations[id] = tip + s.sim.sigma_obs * unit_normal(rng);
        result.max_tip = std::max(result.max_tip, tip);
    }
    return result;
}

std::vector<StepResult> probe_trajectory(const SceneState& state,
                                         const std::vector<Vec2>& waypoints,
                                         std::uint64_t rng_seed) {
    std::vector<StepResult> results;
    results.reserve(waypoints.size());
    const SceneState* current = &state;
    for (std::size_t i = 0; i < waypoints.size(); ++i) {
        results.push_back(step(*current, waypoints[i], mix_seed(rng_seed, i)));
        current = &results.back().state;
    }
    return results;
}

bool goal_reached(const SceneState& state, const Rect& goal) {
    return goal.contains(state.robot_xy());
}

}  // namespace ocgp
