#include "ocgp/config.hpp"

#include <fstream>
#include <set>

#include "ocgp/errors.hpp"

namespace ocgp {

namespace {

const Json& require(const Json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigError(std::string("missing config key '") + key + "'");
    }
    return *it;
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
    const auto it = j.find(key);
    return it == j.end() ? fallback : it->get<T>();
}

}  // namespace

void SceneConfig::validate() const {
    if (version != 1) {
        throw ConfigError("unsupported config version");
    }
    if (!(workspace.max.x() > workspace.min.x() &&
          workspace.max.y() > workspace.min.y())) {
        throw ConfigError("workspace rectangle is degenerate");
    }
    sim.validate();
    gp.validate();
    if (beta < 0.0) {
        throw ConfigError("beta must be >= 0");
    }
    if (proximity_radius && !(*proximity_radius > 0.0)) {
        throw ConfigError("proximity_radius must be > 0 when present");
    }
    if (grid_nx < 2 || grid_ny < 2) {
        throw ConfigError("grid resolution must be >= 2 per axis");
    }
    if (!workspace.contains(robot.start)) {
        throw ConfigError("robot start outside workspace");
    }
    std::set<ObjectId> ids;
    for (const ObjectConfig& obj : objects) {
        if (!ids.insert(obj.id).second) {
            throw ConfigError("duplicate object id " + std::to_string(obj.id));
        }
        obj.params.validate();
    }
    if (!(planner.candidate_step > 0.0 && planner.candidate_step <= sim.max_step)) {
        throw ConfigError("planner candidate_step must be in (0, sim.max_step]");
    }
    if (has_goal) {
        planner.validate();
        if (!workspace.contains(planner.goal.min) ||
            !workspace.contains(planner.goal.max)) {
            throw ConfigError("goal region must lie inside the workspace");
        }
    }
    Vec2 prev = robot.start;
    for (const Vec2& wp : trajectory) {
        if (!workspace.contains(wp)) {
            throw ConfigError("trajectory waypoint outside workspace");
        }
        if ((wp - prev).norm() > sim.max_step * (1.0 + 1e-9)) {
            throw ConfigError("trajectory waypoints spaced farther than max_step");
        }
        prev = wp;
    }
}

SceneConfig scene_config_from_json(const Json& j) {
    SceneConfig cfg;
    cfg.version = get_or(j, "version", 1);
    cfg.seed = get_or<std::uint64_t>(j, "seed", 0);
    cfg.workspace = rect_from_json(require(j, "workspace"));

    const Json& robot = require(j, "robot");
    cfg.robot.start = vec2_from_json(require(robot, "start"));
    cfg.robot.z = get_or(robot, "z", 0.0);
    if (robot.contains("orientation")) {
        cfg.robot.orientation = quat_from_json(robot.at("orientation"));
    }
    cfg.sim.ee_radius = require(robot, "radius").get<double>();

    const Json& sim = require(j, "sim");
    cfg.sim.max_step = require(sim, "max_step").get<double>();
    cfg.sim.relax = get_or(sim, "relax", 0.5);
    cfg.sim.sigma_obs = get_or(sim, "sigma_obs", 0.005);

    const Json& gp = require(j, "gp");
    cfg.gp.alpha = require(gp, "alpha").get<double>();
    cfg.gp.lengthscale = require(gp, "lengthscale").get<double>();
    cfg.gp.noise_var = require(gp, "noise_var").get<double>();
    cfg.prior_mean = get_or(gp, "prior_mean", 0.0);

    cfg.beta = get_or(j, "beta", 2.0);
    cfg.input_spec = input_spec_from_string(get_or<std::string>(j, "input_spec", "xy"));
    if (j.contains("proximity_radius") && !j.at("proximity_radius").is_null()) {
        cfg.proximity_radius = j.at("proximity_radius").get<double>();
    }

    for (const Json& obj : require(j, "objects")) {
        ObjectConfig oc;
        oc.id = require(obj, "id").get<ObjectId>();
        oc.position = vec3_from_json(require(obj, "position"));
        if (obj.contains("orientation")) {
            oc.orientation = quat_from_json(obj.at("orientation"));
        }
        oc.params.mass = get_or(obj, "mass", 0.3);
        oc.params.com_height = require(obj, "com_height").get<double>();
        oc.params.footprint_radius = require(obj, "footprint_radius").get<double>();
        oc.params.tip_fraction = require(obj, "tip_fraction").get<double>();
        oc.params.fall_angle = require(obj, "fall_angle").get<double>();
        cfg.objects.push_back(oc);
    }

    if (j.contains("planner")) {
        const Json& p = j.at("planner");
        cfg.planner.theta_max = get_or(p, "theta_max", 0.15);
        cfg.planner.candidate_step = get_or(p, "candidate_step", cfg.sim.max_step);
        cfg.planner.n_candidates = get_or(p, "n_candidates", 16);
        cfg.planner.explore_weight = get_or(p, "explore_weight", 0.05);
        cfg.planner.max_steps = get_or(p, "max_steps", 400);
        cfg.planner.probe_std_floor = get_or(p, "probe_std_floor", 0.01);
        if (p.contains("seed_ring")) {
            cfg.planner.seed_ring_count = get_or(p.at("seed_ring"), "count", 8);
            cfg.planner.seed_ring_radius = get_or(p.at("seed_ring"), "radius", 0.08);
        }
        if (p.contains("goal")) {
            cfg.planner.goal = rect_from_json(p.at("goal"));
            cfg.has_goal = true;
        }
    } else {
        cfg.planner.candidate_step = cfg.sim.max_step;
    }

    if (j.contains("grid")) {
        cfg.grid_nx = get_or(j.at("grid"), "nx", 100);
        cfg.grid_ny = get_or(j.at("grid"), "ny", 100);
    }

    if (j.contains("trajectory")) {
        for (const Json& wp : j.at("trajectory")) {
            cfg.trajectory.push_back(vec2_from_json(wp));
        }
    }

    cfg.validate();
    return cfg;
}

Json scene_config_to_json(const SceneConfig& cfg) {
    Json objects = Json::array();
    for (const ObjectConfig& obj : cfg.objects) {
        objects.push_back(Json{{"id", obj.id},
                               {"position", to_json(obj.position)},
                               {"orientation", to_json(obj.orientation)},
                               {"mass", obj.params.mass},
                               {"com_height", obj.params.com_height},
                               {"footprint_radius", obj.params.footprint_radius},
                               {"tip_fraction", obj.params.tip_fraction},
                               {"fall_angle", obj.params.fall_angle}});
    }
    Json planner{{"theta_max", cfg.planner.theta_max},
                 {"candidate_step", cfg.planner.candidate_step},
                 {"n_candidates", cfg.planner.n_candidates},
                 {"explore_weight", cfg.planner.explore_weight},
                 {"max_steps", cfg.planner.max_steps},
                 {"probe_std_floor", cfg.planner.probe_std_floor},
                 {"seed_ring",
                  Json{{"count", cfg.planner.seed_ring_count},
                       {"radius", cfg.planner.seed_ring_radius}}}};
    if (cfg.has_goal) {
        planner["goal"] = to_json(cfg.planner.goal);
    }
    Json trajectory = Json::array();
    for (const Vec2& wp : cfg.trajectory) {
        trajectory.push_back(to_json(wp));
    }
    return Json{
        {"version", cfg.version},
        {"seed", cfg.seed},
        {"workspace", to_json(cfg.workspace)},
        {"robot",
         Json{{"start", to_json(cfg.robot.start)},
              {"z", cfg.robot.z},
              {"orientation", to_json(cfg.robot.orientation)},
              {"radius", cfg.sim.ee_radius}}},
        {"sim",
         Json{{"max_step", cfg.sim.max_step},
              {"relax", cfg.sim.relax},
              {"sigma_obs", cfg.sim.sigma_obs}}},
        {"gp",
         Json{{"alpha", cfg.gp.alpha},
              {"lengthscale", cfg.gp.lengthscale},
              {"noise_var", cfg.gp.noise_var},
              {"prior_mean", cfg.prior_mean}}},
        {"beta", cfg.beta},
        {"input_spec", to_string(cfg.input_spec)},
        {"proximity_radius",
         cfg.proximity_radius ? Json(*cfg.proximity_radius) : Json(nullptr)},
        {"objects", std::move(objects)},
        {"planner", std::move(planner)},
        {"grid", Json{{"nx", cfg.grid_nx}, {"ny", cfg.grid_ny}}},
        {"trajectory", std::move(trajectory)}};
}

SceneConfig load_scene_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ConfigError("config parse error in " + path.string() + ": " + e.what());
    }
    return scene_config_from_json(j);
}

SceneState build_scene(const SceneConfig& cfg) {
    SceneState state;
    state.robot.position << cfg.robot.start.x(), cfg.robot.start.y(), cfg.robot.z;
    state.robot.orientation = cfg.robot.orientation;
    state.bounds = cfg.workspace;
    state.sim = cfg.sim;
    for (const ObjectConfig& obj : cfg.objects) {
        ObjectState os;
        os.pose = {obj.position, obj.orientation};
        os.params = obj.params;
        state.objects.emplace(obj.id, os);
    }
    return state;
}

ObjectCentricModel build_object_centric_model(const SceneConfig& cfg) {
    ObjectCentricModel model(cfg.gp, cfg.beta, cfg.input_spec, cfg.prior_mean);
    model.set_gate_radius(cfg.proximity_radius);
    for (const ObjectConfig& obj : cfg.objects) {
        model.register_object(obj.id);
    }
    return model;
}

FullStateModel build_full_state_model(const SceneConfig& cfg) {
    std::vector<ObjectId> order;
    order.reserve(cfg.objects.size());
    for (const ObjectConfig& obj : cfg.objects) {
        order.push_back(obj.id);
    }
    return FullStateModel(cfg.gp, std::move(order), cfg.input_spec, cfg.prior_mean);
}

}  // namespace ocgp
