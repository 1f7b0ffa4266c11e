#include "ocgp/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ocgp/errors.hpp"
#include "ocgp/rng.hpp"

namespace ocgp {

namespace {

Pose robot_pose_at(const SceneState& state, const Vec2& xy) {
    Pose p = state.robot;
    p.position.head<2>() = xy;
    return p;
}

std::map<ObjectId, Pose> object_poses(const SceneState& state) {
    std::map<ObjectId, Pose> poses;
    for (const auto& [id, obj] : state.objects) {
        poses.emplace(id, obj.pose);
    }
    return poses;
}

CompositePrediction composite_at(const ObjectCentricModel& model,
                                 const SceneState& state, const Vec2& xy) {
    return model.composite_predict(robot_pose_at(state, xy), object_poses(state));
}

double observed_max(const StepResult& result) {
    double m = 0.0;
    for (const auto& [id, obs] : result.observations) {
        m = std::max(m, obs);
    }
    return m;
}

EpisodeReport finish_report(EpisodeReport rep, const SceneState& final_state,
                            const PlannerConfig& cfg) {
    rep.final_state = final_state;
    rep.success = goal_reached(final_state, cfg.goal);
    rep.reason = rep.success ? "goal_reached" : "no_progress";
    rep.n_steps = static_cast<int>(rep.steps.size());
    rep.fallen_count = 0;
    for (const auto& [id, obj] : final_state.objects) {
        if (obj.fallen) {
            ++rep.fallen_count;
        }
    }
    return rep;
}

void track_tips(EpisodeReport& rep, const SceneState& s) {
    for (const auto& [id, obj] : s.objects) {
        const double tip = obj.fallen ? obj.params.fall_angle : obj.tip_angle;
        auto [it, inserted] = rep.max_true_tip.try_emplace(id, tip);
        if (!inserted) {
            it->second = std::max(it->second, tip);
        }
    }
}

}  // namespace

void PlannerConfig::validate() const {
    if (!(theta_max >= 0.0) || !(candidate_step > 0.0) || n_candidates < 1 ||
        !(explore_weight >= 0.0) || max_steps < 1 || !(probe_std_floor >= 0.0) ||
        seed_ring_count < 0 || !(seed_ring_radius > 0.0)) {
        throw ConfigError("invalid planner config");
    }
    if (!(goal.max.x() >= goal.min.x() && goal.max.y() >= goal.min.y())) {
        throw ConfigError("goal rectangle is inverted");
    }
}

std::string to_string(StepKind kind) {
    switch (kind) {
        case StepKind::kAdvance: return "advance";
        case StepKind::kProbe: return "probe";
        case StepKind::kRetreat: return "retreat";
    }
    return "unknown";
}

Planner::Planner(PlannerConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

PlanStep Planner::plan_step(const ObjectCentricModel& model,
                            const SceneState& state) {
    const Vec2 pos = state.robot_xy();

    if (retreat_pending_) {
        return {retreat_target_, StepKind::kRetreat,
                composite_at(model, state, retreat_target_)};
    }

    if (cfg_.goal.contains(pos)) {
        return {pos, StepKind::kAdvance, composite_at(model, state, pos)};
    }

    // Candidate targets: one aimed straight at the goal, then a fan of
    // headings. The goal-directed candidate comes first so it wins ties.
    std::vector<Vec2> candidates;
    candidates.reserve(static_cast<std::size_t>(cfg_.n_candidates) + 1);
    const Vec2 goal_point = cfg_.goal.closest_point(pos);
    const Vec2 to_goal = goal_point - pos;
    if (to_goal.norm() <= cfg_.candidate_step) {
        candidates.push_back(goal_point);
    } else {
        candidates.push_back(pos + cfg_.candidate_step * to_goal.normalized());
    }
    for (int k = 0; k < cfg_.n_candidates; ++k) {
        const double heading = 2.0 * M_PI * k / cfg_.n_candidates;
        candidates.push_back(pos + cfg_.candidate_step *
                                       Vec2(std::cos(heading), std::sin(heading)));
    }

    struct Scored {
        Vec2 target;
        CompositePrediction predicted;
        double score;
    };
    std::vector<Scored> scored;
    scored.reserve(candidates.size());
    for (const Vec2& cand : candidates) {
        if (!state.bounds.contains(cand)) {
            continue;
        }
        const CompositePrediction pred = composite_at(model, state, cand);
        const double score = cfg_.goal.distance(cand) - cfg_.explore_weight * pred.std;
        scored.push_back({cand, pred, score});
    }

    // Advances may hold or reduce the goal distance but never regress, and
    // never bounce straight back to the spot just left; either pattern
    // deadlocks the greedy loop in a two-point cycle in front of an
    // obstacle. With no such candidate the decision falls through to
    // probing.
    const double current_distance = cfg_.goal.distance(pos);
    const Scored* best_feasible = nullptr;
    for (const Scored& s : scored) {
        if (s.predicted.ucb > cfg_.theta_max) {
            continue;
        }
        if (cfg_.goal.distance(s.target) > current_distance) {
            continue;
        }
        if (prev_position_ &&
            (s.target - *prev_position_).norm() < 0.5 * cfg_.candidate_step) {
            continue;
        }
        if (!best_feasible || s.score < best_feasible->score) {
            best_feasible = &s;
        }
    }
    if (best_feasible) {
        last_origin_ = pos;
        return {best_feasible->target, StepKind::kAdvance, best_feasible->predicted};
    }

    // No safe advance: take a short information-seeking touch toward the
    // lowest-UCB candidate whose uncertainty is still worth buying down.
    const Scored* best_probe = nullptr;
    for (const Scored& s : scored) {
        if (s.predicted.std <= cfg_.probe_std_floor) {
            continue;
        }
        if (!best_probe || s.predicted.ucb < best_probe->predicted.ucb) {
            best_probe = &s;
        }
    }
    if (!best_probe) {
        for (const Scored& s : scored) {
            if (!best_probe || s.predicted.ucb < best_probe->predicted.ucb) {
                best_probe = &s;
            }
        }
    }
    if (!best_probe) {
        // All candidates out of bounds: hold position.
        last_origin_ = pos;
        return {pos, StepKind::kProbe, composite_at(model, state, pos)};
    }
    const Vec2 probe_target = pos + (best_probe->target - pos) / 4.0;
    last_origin_ = pos;
    return {probe_target, StepKind::kProbe, composite_at(model, state, probe_target)};
}

void Planner::note_result(const PlanStep& plan, const StepResult& result) {
    if (retreat_pending_ && plan.kind == StepKind::kRetreat) {
        retreat_pending_ = false;
        return;
    }
    if (plan.kind == StepKind::kProbe &&
        observed_max(result) > cfg_.theta_max / 2.0) {
        retreat_pending_ = true;
        retreat_target_ = last_origin_;
    }
}

void seed_prior_space(ObjectCentricModel& model, const SceneState& state,
                      const PlannerConfig& cfg) {
    const Vec2 start = state.robot_xy();
    for (int j = 0; j < cfg.seed_ring_count; ++j) {
        const double angle = 2.0 * M_PI * j / cfg.seed_ring_count;
        const Vec2 xy =
            start + cfg.seed_ring_radius * Vec2(std::cos(angle), std::sin(angle));
        const Pose ring_pose = robot_pose_at(state, xy);
        for (const auto& [id, obj] : state.objects) {
            model.update(id, ring_pose, obj.pose, 0.0);
        }
    }
}

EpisodeReport run_episode(ObjectCentricModel& model, const SceneState& state,
                          const PlannerConfig& cfg, std::uint64_t rng_seed,
                          const EpisodeObserver& observer) {
    cfg.validate();
    Planner planner(cfg);
    EpisodeReport rep;
    SceneState current = state;
    track_tips(rep, current);
    if (observer) {
        observer(0, current, model);
    }
    for (int i = 0; i < cfg.max_steps && !goal_reached(current, cfg.goal); ++i) {
        const PlanStep plan = planner.plan_step(model, current);
        const StepResult result = step(current, plan.target, mix_seed(rng_seed, i));
        planner.note_result(plan, result);
        for (const auto& [id, obs] : result.observations) {
            model.update_gated(id, result.state.robot, result.state.objects.at(id).pose,
                               obs);
        }
        current = result.state;
        rep.steps.push_back(
            {plan, observed_max(result), result.max_tip, current.robot_xy()});
        track_tips(rep, current);
        if (observer) {
            observer(static_cast<int>(rep.steps.size()), current, model);
        }
    }
    return finish_report(std::move(rep), current, cfg);
}

EpisodeReport run_straight_line(const SceneState& state, const PlannerConfig& cfg,
                                std::uint64_t rng_seed) {
    cfg.validate();
    EpisodeReport rep;
    SceneState current = state;
    track_tips(rep, current);
    for (int i = 0; i < cfg.max_steps && !goal_reached(current, cfg.goal); ++i) {
        const Vec2 pos = current.robot_xy();
        const Vec2 to_goal = cfg.goal.closest_point(pos) - pos;
        const Vec2 target = current.bounds.clamp(
            to_goal.norm() <= cfg.candidate_step
                ? Vec2(pos + to_goal)
                : Vec2(pos + cfg.candidate_step * to_goal.normalized()));
        const PlanStep plan{target, StepKind::kAdvance, CompositePrediction{}};
        const StepResult result = step(current, target, mix_seed(rng_seed, i));
        current = result.state;
        rep.steps.push_back(
            {plan, observed_max(result), result.max_tip, current.robot_xy()});
        track_tips(rep, current);
    }
    return finish_report(std::move(rep), current, cfg);
}

}  // namespace ocgp
