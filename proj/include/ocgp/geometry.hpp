#pragma once

#include <Eigen/Core>

namespace ocgp {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Unit quaternion, scalar-last: (x, y, z) vector part, w scalar part.
struct Quaternion {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double w = 1.0;

    static Quaternion identity() { return {}; }

    double squared_norm() const { return x * x + y * y + z * z + w * w; }
    double norm() const;
    Quaternion normalized() const;
    Quaternion negated() const { return {-x, -y, -z, -w}; }
};

/// Position and orientation of a body in a named frame.
struct Pose {
    Vec3 position = Vec3::Zero();
    Quaternion orientation;

    static Pose identity() { return {}; }
};

/// Proper rigid transform acting as p -> R p + t.
struct RigidTransform {
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();

    static RigidTransform identity() { return {}; }

    Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
};

/// Axis-aligned planar rectangle, closed on its boundary.
struct Rect {
    Vec2 min = Vec2::Zero();
    Vec2 max = Vec2::Zero();

    bool contains(const Vec2& p) const {
        return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() &&
               p.y() <= max.y();
    }
    Vec2 clamp(const Vec2& p) const {
        return {std::clamp(p.x(), min.x(), max.x()),
                std::clamp(p.y(), min.y(), max.y())};
    }
    /// Closest point of the rectangle to p (p itself when inside).
    Vec2 closest_point(const Vec2& p) const { return clamp(p); }
    double distance(const Vec2& p) const { return (p - clamp(p)).norm(); }
};

/// Rotation matrix of a unit quaternion. Inputs within 1e-6 of unit norm are
/// normalized internally; anything further off throws NonUnitQuaternion.
Mat3 quat_to_rotation(const Quaternion& q);

/// Inverse of quat_to_rotation via the branch-on-largest-diagonal method.
/// Returns the representative with w >= 0. Throws NotARotation when the input
/// is not orthonormal with determinant +1.
Quaternion rotation_to_quat(const Mat3& r);

/// Frame-to-world transform of a body pose: (R(q), p).
RigidTransform object_to_world_transform(const Pose& object_pose);

/// World-to-object transform: closed-form inverse (R^T, -R^T p).
RigidTransform world_to_object_transform(const Pose& object_pose);

RigidTransform compose(const RigidTransform& a, const RigidTransform& b);
RigidTransform invert(const RigidTransform& t);

/// Applies a rigid transform to a pose (rotates orientation, moves position).
Pose transform_pose(const RigidTransform& t, const Pose& pose);

/// Robot pose re-expressed in the object's frame.
Pose express_in_object_frame(const Pose& robot_pose, const Pose& object_pose);

}  // namespace ocgp
