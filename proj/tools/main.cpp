#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ocgp/errors.hpp"
#include "ocgp/experiments.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int snapshots = 4;
    bool no_images = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Scene config JSON")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out_dir, "Output directory")->required();
    cmd->add_option("--seed", args.seed, "Override the config RNG seed")
        ->each([&args](const std::string&) { args.seed_set = true; });
    cmd->add_option("--snapshots", args.snapshots, "Field snapshots per run")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--no-images", args.no_images, "Skip heatmap emission");
}

ocgp::RunOptions options_from(const CommonArgs& args) {
    ocgp::RunOptions opts;
    opts.out_dir = args.out_dir;
    if (args.seed_set) {
        opts.seed_override = args.seed;
    }
    opts.snapshots = args.snapshots;
    opts.images = !args.no_images;
    return opts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Object-centric GP interaction learning experiments"};
    app.require_subcommand(1);

    CommonArgs single_args;
    std::string variant = "tipping";
    CLI::App* single = app.add_subcommand(
        "probe-single", "Open-loop probe of one object; fields for the "
                        "object-centric model and the full-state baseline");
    add_common(single, single_args);
    single->add_option("--variant", variant, "tipping or pushing")
        ->check(CLI::IsMember({"tipping", "pushing"}));

    CommonArgs multi_args;
    CLI::App* multi = app.add_subcommand(
        "probe-multi", "Open-loop probe through several objects; worst-case "
                       "composite fields vs. the full-state baseline");
    add_common(multi, multi_args);

    CommonArgs plan_args;
    bool baseline = false;
    CLI::App* plan = app.add_subcommand(
        "plan", "UCB-constrained planner episode on the configured scene");
    add_common(plan, plan_args);
    plan->add_flag("--baseline", baseline,
                   "Run the straight-line pusher instead of the planner");

    CLI11_PARSE(app, argc, argv);

    try {
        if (single->parsed()) {
            const auto cfg = ocgp::load_scene_config(single_args.config_path);
            const auto art = ocgp::run_probe_single(
                cfg, ocgp::probe_variant_from_string(variant),
                options_from(single_args));
            std::cout << art.summary.dump(2) << std::endl;
        } else if (multi->parsed()) {
            const auto cfg = ocgp::load_scene_config(multi_args.config_path);
            const auto art = ocgp::run_probe_multi(cfg, options_from(multi_args));
            std::cout << art.summary.dump(2) << std::endl;
        } else if (plan->parsed()) {
            const auto cfg = ocgp::load_scene_config(plan_args.config_path);
            const auto art = ocgp::run_plan(cfg, options_from(plan_args), baseline);
            std::cout << art.summary.dump(2) << std::endl;
        }
    } catch (const ocgp::Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
