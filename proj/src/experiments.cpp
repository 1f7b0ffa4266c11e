#include "ocgp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "ocgp/errors.hpp"
#include "ocgp/heatmap.hpp"
#include "ocgp/rng.hpp"

namespace ocgp {

namespace {

std::vector<int> snapshot_steps_for(int n_steps, int count) {
    std::set<int> steps;
    if (count <= 1) {
        steps.insert(n_steps);
    } else {
        for (int i = 0; i < count; ++i) {
            steps.insert(static_cast<int>(
                std::lround(static_cast<double>(i) * n_steps / (count - 1))));
        }
    }
    return {steps.begin(), steps.end()};
}

std::map<ObjectId, Pose> poses_of(const SceneState& state) {
    std::map<ObjectId, Pose> poses;
    for (const auto& [id, obj] : state.objects) {
        poses.emplace(id, obj.pose);
    }
    return poses;
}

double max_observation(const StepResult& result) {
    double m = 0.0;
    for (const auto& [id, obs] : result.observations) {
        m = std::max(m, obs);
    }
    return m;
}

void seed_full_state(FullStateModel& fs, const SceneState& state,
                     const PlannerConfig& cfg) {
    const Vec2 start = state.robot_xy();
    const auto poses = poses_of(state);
    for (int j = 0; j < cfg.seed_ring_count; ++j) {
        const double angle = 2.0 * M_PI * j / cfg.seed_ring_count;
        Pose ring = state.robot;
        ring.position.head<2>() =
            start + cfg.seed_ring_radius * Vec2(std::cos(angle), std::sin(angle));
        fs.update(ring, poses, 0.0);
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
    out << text;
}

void write_heatmaps(const std::filesystem::path& dir,
                    const std::vector<FieldGrid>& grids, double alpha, double beta) {
    const double vmax = std::sqrt(alpha) * (1.0 + beta);
    for (const FieldGrid& g : grids) {
        const std::string stem = g.model_kind + "_s" + std::to_string(g.snapshot);
        write_heatmap_ppm(dir / (stem + "_mean.ppm"), g.mean, 0.0, vmax);
        write_heatmap_ppm(dir / (stem + "_std.ppm"), g.std, 0.0, vmax);
    }
}

Json artifact_index(bool images, bool plan) {
    Json artifacts{{"config", "config.json"},
                   {"fields", "fields.csv"},
                   {"summary", "summary.json"}};
    artifacts[plan ? "episode" : "replay"] = plan ? "episode.jsonl" : "replay.jsonl";
    artifacts["images"] = images;
    return artifacts;
}

struct ProbeRun {
    std::vector<StepResult> replay;
    std::vector<FieldGrid> grids;
    std::vector<int> snapshot_steps;
    SceneState final_state;
};

// Replays the scripted trajectory, feeding both models after every step and
// rendering at the snapshot indices (0 = after seeding, before any step).
ProbeRun replay_probe(const SceneConfig& cfg, ObjectCentricModel& oc,
                      FullStateModel& fs, bool composite_view, int snapshots) {
    ProbeRun run;
    SceneState scene = build_scene(cfg);
    seed_prior_space(oc, scene, cfg.planner);
    seed_full_state(fs, scene, cfg.planner);

    const int n_steps = static_cast<int>(cfg.trajectory.size());
    run.snapshot_steps = snapshot_steps_for(n_steps, snapshots);
    const std::set<int> snap_set(run.snapshot_steps.begin(), run.snapshot_steps.end());
    const GridSpec grid = cfg.grid_spec();

    const auto render_now = [&](int step_index, const SceneState& s) {
        const auto poses = poses_of(s);
        FieldGrid oc_grid =
            composite_view
                ? render_composite(oc, poses, s.robot, grid)
                : render_object_centric(oc, poses.begin()->first,
                                        poses.begin()->second, s.robot, grid);
        oc_grid.snapshot = step_index;
        run.grids.push_back(std::move(oc_grid));
        FieldGrid fs_grid = render_full_state(fs, poses, s.robot, grid);
        fs_grid.snapshot = step_index;
        run.grids.push_back(std::move(fs_grid));
    };

    if (snap_set.count(0)) {
        render_now(0, scene);
    }
    for (int i = 0; i < n_steps; ++i) {
        StepResult result = step(scene, cfg.trajectory[i], mix_seed(cfg.seed, i));
        for (const auto& [id, obs] : result.observations) {
            oc.update_gated(id, result.state.robot, result.state.objects.at(id).pose,
                            obs);
        }
        fs.update(result.state.robot, poses_of(result.state), max_observation(result));
        scene = result.state;
        run.replay.push_back(std::move(result));
        if (snap_set.count(i + 1)) {
            render_now(i + 1, scene);
        }
    }
    run.final_state = scene;
    return run;
}

Json scene_summary(const SceneState& state) {
    Json objects = Json::object();
    for (const auto& [id, obj] : state.objects) {
        objects[std::to_string(id)] = to_json(obj);
    }
    return Json{{"robot", to_json(state.robot)}, {"objects", std::move(objects)}};
}

ProbeArtifacts finish_probe(const SceneConfig& effective, ProbeRun run,
                            const RunOptions& opts, const std::string& subcommand,
                            const Json& extra) {
    ProbeArtifacts art;
    art.effective_config = effective;
    art.replay = std::move(run.replay);
    art.grids = std::move(run.grids);
    art.snapshot_steps = run.snapshot_steps;
    art.final_state = run.final_state;

    double max_true_tip = 0.0;
    int fallen = 0;
    for (const StepResult& r : art.replay) {
        max_true_tip = std::max(max_true_tip, r.max_tip);
    }
    for (const auto& [id, obj] : art.final_state.objects) {
        fallen += obj.fallen ? 1 : 0;
    }

    art.summary = Json{{"subcommand", subcommand},
                       {"seed", effective.seed},
                       {"n_steps", static_cast<int>(art.replay.size())},
                       {"snapshot_steps", art.snapshot_steps},
                       {"max_true_tip", max_true_tip},
                       {"fallen_count", fallen},
                       {"final_scene", scene_summary(art.final_state)},
                       {"artifacts", artifact_index(opts.images, false)}};
    art.summary.update(extra);

    std::filesystem::create_directories(opts.out_dir);
    write_text(opts.out_dir / "config.json", scene_config_to_json(effective).dump(2) + "\n");
    write_replay_log(opts.out_dir / "replay.jsonl", art.replay);
    write_fields_csv(opts.out_dir / "fields.csv", art.grids);
    if (opts.images) {
        write_heatmaps(opts.out_dir, art.grids, effective.gp.alpha, effective.beta);
    }
    write_text(opts.out_dir / "summary.json", art.summary.dump(2) + "\n");
    return art;
}

SceneConfig apply_overrides(const SceneConfig& cfg, const RunOptions& opts) {
    SceneConfig effective = cfg;
    if (opts.seed_override) {
        effective.seed = *opts.seed_override;
    }
    return effective;
}

}  // namespace

ProbeVariant probe_variant_from_string(const std::string& name) {
    if (name == "tipping") return ProbeVariant::kTipping;
    if (name == "pushing") return ProbeVariant::kPushing;
    throw ConfigError("unknown probe variant '" + name + "' (expected tipping or pushing)");
}

std::string to_string(ProbeVariant variant) {
    return variant == ProbeVariant::kTipping ? "tipping" : "pushing";
}

ProbeArtifacts run_probe_single(const SceneConfig& cfg, ProbeVariant variant,
                                const RunOptions& opts) {
    if (cfg.objects.size() != 1) {
        throw ConfigError("probe-single requires exactly one object");
    }
    SceneConfig effective = apply_overrides(cfg, opts);
    effective.objects[0].params.tip_fraction =
        variant == ProbeVariant::kTipping ? 1.0 : 0.0;

    ObjectCentricModel oc = build_object_centric_model(effective);
    FullStateModel fs = build_full_state_model(effective);
    ProbeRun run = replay_probe(effective, oc, fs, /*composite_view=*/false,
                                opts.snapshots);
    return finish_probe(effective, std::move(run), opts, "probe-single",
                        Json{{"variant", to_string(variant)}});
}

ProbeArtifacts run_probe_multi(const SceneConfig& cfg, const RunOptions& opts) {
    if (cfg.objects.size() < 2) {
        throw ConfigError("probe-multi requires at least two objects");
    }
    SceneConfig effective = apply_overrides(cfg, opts);
    ObjectCentricModel oc = build_object_centric_model(effective);
    FullStateModel fs = build_full_state_model(effective);
    ProbeRun run = replay_probe(effective, oc, fs, /*composite_view=*/true,
                                opts.snapshots);
    return finish_probe(effective, std::move(run), opts, "probe-multi", Json::object());
}

PlanArtifacts run_plan(const SceneConfig& cfg, const RunOptions& opts,
                       bool straight_line_baseline) {
    if (!cfg.has_goal) {
        throw ConfigError("plan requires a goal region in the planner config");
    }
    const SceneConfig effective = apply_overrides(cfg, opts);
    const SceneState scene = build_scene(effective);

    PlanArtifacts art;
    art.effective_config = effective;

    if (straight_line_baseline) {
        art.report = run_straight_line(scene, effective.planner, effective.seed);
    } else {
        ObjectCentricModel seeded = build_object_centric_model(effective);
        seed_prior_space(seeded, scene, effective.planner);

        // First pass fixes the episode length so snapshots can be spaced
        // evenly; the second, identical pass renders at those steps.
        ObjectCentricModel probe_model = seeded;
        const EpisodeReport sizing =
            run_episode(probe_model, scene, effective.planner, effective.seed);
        art.snapshot_steps = snapshot_steps_for(sizing.n_steps, opts.snapshots);
        const std::set<int> snap_set(art.snapshot_steps.begin(),
                                     art.snapshot_steps.end());

        const GridSpec grid = effective.grid_spec();
        ObjectCentricModel model = seeded;
        const EpisodeObserver observer = [&](int index, const SceneState& s,
                                             const ObjectCentricModel& m) {
            if (!snap_set.count(index)) {
                return;
            }
            FieldGrid g = render_composite(m, poses_of(s), s.robot, grid);
            g.snapshot = index;
            art.grids.push_back(std::move(g));
        };
        art.report = run_episode(model, scene, effective.planner, effective.seed,
                                 observer);
    }

    Json max_tips = Json::object();
    for (const auto& [id, tip] : art.report.max_true_tip) {
        max_tips[std::to_string(id)] = tip;
    }
    art.summary = Json{{"subcommand", "plan"},
                       {"planner", straight_line_baseline ? "straight_line" : "ucb"},
                       {"seed", effective.seed},
                       {"success", art.report.success},
                       {"reason", art.report.reason},
                       {"n_steps", art.report.n_steps},
                       {"fallen_count", art.report.fallen_count},
                       {"max_true_tip", std::move(max_tips)},
                       {"final_robot", to_json(art.report.final_state.robot_xy())},
                       {"theta_max", effective.planner.theta_max},
                       {"snapshot_steps", art.snapshot_steps},
                       {"artifacts", artifact_index(opts.images, true)}};

    std::filesystem::create_directories(opts.out_dir);
    write_text(opts.out_dir / "config.json", scene_config_to_json(effective).dump(2) + "\n");
    write_episode_log(opts.out_dir / "episode.jsonl", art.report);
    write_fields_csv(opts.out_dir / "fields.csv", art.grids);
    if (opts.images) {
        write_heatmaps(opts.out_dir, art.grids, effective.gp.alpha, effective.beta);
    }
    write_text(opts.out_dir / "summary.json", art.summary.dump(2) + "\n");
    return art;
}

}  // namespace ocgp
