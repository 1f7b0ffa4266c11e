#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ocgp/config.hpp"
#include "ocgp/field.hpp"

namespace ocgp {

enum class ProbeVariant { kTipping, kPushing };

ProbeVariant probe_variant_from_string(const std::string& name);
std::string to_string(ProbeVariant variant);

struct RunOptions {
    std::filesystem::path out_dir;
    std::optional<std::uint64_t> seed_override;
    int snapshots = 4;
    bool images = true;
};

struct ProbeArtifacts {
    SceneConfig effective_config;
    std::vector<StepResult> replay;
    std::vector<FieldGrid> grids;
    std::vector<int> snapshot_steps;
    SceneState final_state;
    Json summary;
};

struct PlanArtifacts {
    SceneConfig effective_config;
    EpisodeReport report;
    std::vector<FieldGrid> grids;
    std::vector<int> snapshot_steps;
    Json summary;
};

/// Open-loop probe of a single object. The variant pins the object's
/// tip_fraction (tipping -> 1, pushing -> 0); both the object-centric model
/// and the full-state baseline learn from the same replay and are rendered
/// at evenly spaced snapshots.
ProbeArtifacts run_probe_single(const SceneConfig& cfg, ProbeVariant variant,
                                const RunOptions& opts);

/// Open-loop probe through several objects; renders the worst-case composite
/// field next to the full-state baseline.
ProbeArtifacts run_probe_multi(const SceneConfig& cfg, const RunOptions& opts);

/// Planner episode on the configured scene (or the straight-line baseline
/// when requested; the baseline learns nothing, so no fields are rendered).
PlanArtifacts run_plan(const SceneConfig& cfg, const RunOptions& opts,
                       bool straight_line_baseline = false);

}  // namespace ocgp
