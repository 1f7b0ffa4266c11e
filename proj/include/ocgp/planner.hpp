#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ocgp/object_model.hpp"
#include "ocgp/sim.hpp"

namespace ocgp {

struct PlannerConfig {
    double theta_max = 0.15;      // rad, operative tip constraint
    double candidate_step = 0.05; // m, advance step length
    int n_candidates = 16;        // headings per decision (plus one aimed at the goal)
    double explore_weight = 0.05; // m per rad of composite std
    int max_steps = 400;
    Rect goal;
    double probe_std_floor = 0.01;   // rad; probes target candidates above this
    int seed_ring_count = 8;
    double seed_ring_radius = 0.08;  // m

    void validate() const;
};

enum class StepKind { kAdvance, kProbe, kRetreat };

std::string to_string(StepKind kind);

struct PlanStep {
    Vec2 target = Vec2::Zero();
    StepKind kind = StepKind::kAdvance;
    CompositePrediction predicted;  // composite at the target, at decision time
};

struct StepRecord {
    PlanStep plan;
    double observed_max_tip = 0.0;  // max over noisy per-object observations
    double true_max_tip = 0.0;
    Vec2 robot_after = Vec2::Zero();
};

struct EpisodeReport {
    bool success = false;
    std::string reason;  // "goal_reached" or "no_progress"
    int n_steps = 0;
    std::vector<StepRecord> steps;
    std::map<ObjectId, double> max_true_tip;
    int fallen_count = 0;
    SceneState final_state;
};

/// Greedy receding-horizon planner. Candidate targets one step out are
/// scored by distance-to-goal minus an exploration bonus; candidates whose
/// composite UCB exceeds theta_max are infeasible. With no feasible
/// candidate it falls back to short information-seeking probe touches,
/// retreating when a probe observation comes back hot.
class Planner {
  public:
    explicit Planner(PlannerConfig cfg);

    PlanStep plan_step(const ObjectCentricModel& model, const SceneState& state);

    /// Feeds back the executed step's observations (retreat trigger memory).
    void note_result(const PlanStep& plan, const StepResult& result);

    const PlannerConfig& config() const { return cfg_; }

  private:
    PlannerConfig cfg_;
    Vec2 last_origin_ = Vec2::Zero();
    bool retreat_pending_ = false;
    Vec2 retreat_target_ = Vec2::Zero();
};

/// Inserts y = 0 observations at a ring of points around the robot's start
/// pose into every registered object's GP (the free-space prior). Not
/// idempotent: seeding twice doubles the ring points.
void seed_prior_space(ObjectCentricModel& model, const SceneState& state,
                      const PlannerConfig& cfg);

/// Invoked after each executed step with (step_index, scene, model); step 0
/// fires once before any step with the initial scene.
using EpisodeObserver =
    std::function<void(int, const SceneState&, const ObjectCentricModel&)>;

/// Runs plan -> step -> model update until the goal or the step budget.
/// Model updates are proximity-gated per the model's own gate config.
/// Deterministic for a fixed seed.
EpisodeReport run_episode(ObjectCentricModel& model, const SceneState& state,
                          const PlannerConfig& cfg, std::uint64_t rng_seed,
                          const EpisodeObserver& observer = {});

/// Baseline that walks straight at the goal ignoring all predictions.
EpisodeReport run_straight_line(const SceneState& state, const PlannerConfig& cfg,
                                std::uint64_t rng_seed);

}  // namespace ocgp
