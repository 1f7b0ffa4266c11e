#include "ocgp/object_model.hpp"

#include <cmath>

#include "ocgp/errors.hpp"

namespace ocgp {

int input_dim(InputSpec spec) {
    switch (spec) {
        case InputSpec::kPlanarXY: return 2;
        case InputSpec::kPositionXYZ: return 3;
        case InputSpec::kPositionQuat: return 7;
    }
    throw ConfigError("unhandled input spec");
}

Eigen::VectorXd project_pose(InputSpec spec, const Pose& pose) {
    Eigen::VectorXd v(input_dim(spec));
    switch (spec) {
        case InputSpec::kPlanarXY:
            v << pose.position.x(), pose.position.y();
            break;
        case InputSpec::kPositionXYZ:
            v = pose.position;
            break;
        case InputSpec::kPositionQuat:
            v << pose.position, pose.orientation.x, pose.orientation.y,
                pose.orientation.z, pose.orientation.w;
            break;
    }
    return v;
}

InputSpec input_spec_from_string(const std::string& name) {
    if (name == "xy") return InputSpec::kPlanarXY;
    if (name == "xyz") return InputSpec::kPositionXYZ;
    if (name == "xyzq") return InputSpec::kPositionQuat;
    throw ConfigError("unknown input_spec '" + name + "' (expected xy, xyz or xyzq)");
}

std::string to_string(InputSpec spec) {
    switch (spec) {
        case InputSpec::kPlanarXY: return "xy";
        case InputSpec::kPositionXYZ: return "xyz";
        case InputSpec::kPositionQuat: return "xyzq";
    }
    throw ConfigError("unhandled input spec");
}

CompositePrediction compose_upper_bound(
    const std::vector<std::pair<ObjectId, Posterior>>& predictions, double beta) {
    CompositePrediction best;
    for (const auto& [id, post] : predictions) {
        const double std = post.stddev();
        const double ucb = post.mean + beta * std;
        if (!best.argmax_object || ucb > best.ucb ||
            (ucb == best.ucb && id < *best.argmax_object)) {
            best = {post.mean, std, ucb, id};
        }
    }
    return best;
}

ObjectCentricModel::ObjectCentricModel(KernelParams params, double beta,
                                       InputSpec spec, double prior_mean)
    : params_(params), beta_(beta), spec_(spec), prior_mean_(prior_mean) {
    params_.validate();
    if (beta_ < 0.0) {
        throw ConfigError("beta must be >= 0");
    }
}

void ObjectCentricModel::register_object(ObjectId id) {
    models_.try_emplace(id, params_, input_dim(spec_), prior_mean_);
}

bool ObjectCentricModel::has_object(ObjectId id) const {
    return models_.count(id) > 0;
}

const GpModel& ObjectCentricModel::model(ObjectId id) const {
    const auto it = models_.find(id);
    if (it == models_.end()) {
        throw UnknownObject("object " + std::to_string(id) + " is not registered");
    }
    return it->second;
}

Eigen::VectorXd ObjectCentricModel::object_frame_input(
    const Pose& robot_pose, const Pose& object_pose) const {
    return project_pose(spec_, express_in_object_frame(robot_pose, object_pose));
}

void ObjectCentricModel::update(ObjectId id, const Pose& robot_pose,
                                const Pose& object_pose, double y) {
    const auto it = models_.find(id);
    if (it == models_.end()) {
        throw UnknownObject("object " + std::to_string(id) + " is not registered");
    }
    it->second.add_observation(object_frame_input(robot_pose, object_pose), y);
}

bool ObjectCentricModel::update_gated(ObjectId id, const Pose& robot_pose,
                                      const Pose& object_pose, double y) {
    if (gate_radius_) {
        const double planar_dist =
            (robot_pose.position.head<2>() - object_pose.position.head<2>()).norm();
        if (planar_dist > *gate_radius_) {
            if (!has_object(id)) {
                throw UnknownObject("object " + std::to_string(id) + " is not registered");
            }
            return false;
        }
    }
    update(id, robot_pose, object_pose, y);
    return true;
}

Posterior ObjectCentricModel::predict(ObjectId id, const Pose& robot_pose,
                                      const Pose& object_pose) const {
    return model(id).posterior(object_frame_input(robot_pose, object_pose));
}

CompositePrediction ObjectCentricModel::composite_predict(
    const Pose& robot_pose, const std::map<ObjectId, Pose>& object_poses) const {
    std::vector<std::pair<ObjectId, Posterior>> predictions;
    predictions.reserve(models_.size());
    for (const auto& [id, gp] : models_) {
        const auto pose_it = object_poses.find(id);
        if (pose_it == object_poses.end()) {
            throw MissingPose("no pose given for object " + std::to_string(id));
        }
        predictions.emplace_back(id, gp.posterior(object_frame_input(robot_pose, pose_it->second)));
    }
    return compose_upper_bound(predictions, beta_);
}

FullStateModel::FullStateModel(KernelParams params, std::vector<ObjectId> object_order,
                               InputSpec spec, double prior_mean)
    : spec_(spec),
      object_order_(std::move(object_order)),
      gp_(params, input_dim(spec) * (1 + static_cast<int>(object_order_.size())),
          prior_mean) {}

Eigen::VectorXd FullStateModel::input_vector(
    const Pose& robot_pose, const std::map<ObjectId, Pose>& object_poses) const {
    const int d = input_dim(spec_);
    Eigen::VectorXd v(gp_.input_dim());
    v.head(d) = project_pose(spec_, robot_pose);
    int offset = d;
    for (const ObjectId id : object_order_) {
        const auto it = object_poses.find(id);
        if (it == object_poses.end()) {
            throw MissingPose("no pose given for object " + std::to_string(id));
        }
        v.segment(offset, d) = project_pose(spec_, it->second);
        offset += d;
    }
    return v;
}

void FullStateModel::update(const Pose& robot_pose,
                            const std::map<ObjectId, Pose>& object_poses,
                            double y_max) {
    gp_.add_observation(input_vector(robot_pose, object_poses), y_max);
}

Posterior FullStateModel::predict(const Pose& robot_pose,
                                  const std::map<ObjectId, Pose>& object_poses) const {
    return gp_.posterior(input_vector(robot_pose, object_poses));
}

}  // namespace ocgp
