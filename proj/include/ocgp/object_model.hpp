#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ocgp/geometry.hpp"
#include "ocgp/gp.hpp"

namespace ocgp {

using ObjectId = int;

/// Which components of a (possibly object-frame) pose feed the GP input.
/// PlanarXY matches the planar desk experiments; the wider specs carry the
/// full position or position plus orientation quaternion.
enum class InputSpec { kPlanarXY, kPositionXYZ, kPositionQuat };

int input_dim(InputSpec spec);
Eigen::VectorXd project_pose(InputSpec spec, const Pose& pose);

InputSpec input_spec_from_string(const std::string& name);
std::string to_string(InputSpec spec);

/// Worst-case selection over per-object predictions: the (mean, std) of the
/// object attaining the highest upper bound u = mean + beta * std.
struct CompositePrediction {
    double mean = 0.0;
    double std = 0.0;
    double ucb = 0.0;
    std::optional<ObjectId> argmax_object;
};

/// Reduces labelled per-object posteriors to the highest-UCB prediction.
/// Ties go to the lowest object id; an empty set yields the zero prediction.
CompositePrediction compose_upper_bound(
    const std::vector<std::pair<ObjectId, Posterior>>& predictions, double beta);

/// One GP per object, each fed the robot state expressed in that object's
/// frame. Training data stays valid when objects move because the inputs are
/// relative configurations.
class ObjectCentricModel {
  public:
    ObjectCentricModel(KernelParams params, double beta,
                       InputSpec spec = InputSpec::kPlanarXY,
                       double prior_mean = 0.0);

    void register_object(ObjectId id);
    bool has_object(ObjectId id) const;
    const std::map<ObjectId, GpModel>& models() const { return models_; }
    const GpModel& model(ObjectId id) const;

    void update(ObjectId id, const Pose& robot_pose, const Pose& object_pose,
                double y);
    /// Like update(), but skips the insertion when the proximity gate is set
    /// and the object's planar distance from the end effector exceeds it.
    /// Returns whether the observation was inserted.
    bool update_gated(ObjectId id, const Pose& robot_pose,
                      const Pose& object_pose, double y);

    Posterior predict(ObjectId id, const Pose& robot_pose,
                      const Pose& object_pose) const;

    /// Per-object predictions reduced by compose_upper_bound. Every
    /// registered object must appear in object_poses.
    CompositePrediction composite_predict(
        const Pose& robot_pose, const std::map<ObjectId, Pose>& object_poses) const;

    double beta() const { return beta_; }
    InputSpec spec() const { return spec_; }
    const KernelParams& params() const { return params_; }

    std::optional<double> gate_radius() const { return gate_radius_; }
    void set_gate_radius(std::optional<double> radius) { gate_radius_ = radius; }

  private:
    Eigen::VectorXd object_frame_input(const Pose& robot_pose,
                                       const Pose& object_pose) const;

    KernelParams params_;
    double beta_;
    InputSpec spec_;
    double prior_mean_;
    std::optional<double> gate_radius_;
    std::map<ObjectId, GpModel> models_;
};

/// Baseline GP over world-frame state: the input concatenates the robot
/// components with every object's components in a fixed declared order, and
/// the target is the scene-maximum tip angle.
class FullStateModel {
  public:
    FullStateModel(KernelParams params, std::vector<ObjectId> object_order,
                   InputSpec spec = InputSpec::kPlanarXY, double prior_mean = 0.0);

    void update(const Pose& robot_pose,
                const std::map<ObjectId, Pose>& object_poses, double y_max);
    Posterior predict(const Pose& robot_pose,
                      const std::map<ObjectId, Pose>& object_poses) const;

    /// Concatenated world-frame input; order-sensitive by construction.
    Eigen::VectorXd input_vector(const Pose& robot_pose,
                                 const std::map<ObjectId, Pose>& object_poses) const;

    const GpModel& gp() const { return gp_; }
    const std::vector<ObjectId>& object_order() const { return object_order_; }

  private:
    InputSpec spec_;
    std::vector<ObjectId> object_order_;
    GpModel gp_;
};

}  // namespace ocgp
