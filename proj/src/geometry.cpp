#include "ocgp/geometry.hpp"

#include <cmath>

#include <Eigen/LU>

#include "ocgp/errors.hpp"

namespace ocgp {

namespace {
constexpr double kUnitTol = 1e-6;
constexpr double kOrthoTol = 1e-6;
}  // namespace

double Quaternion::norm() const { return std::sqrt(squared_norm()); }

Quaternion Quaternion::normalized() const {
    const double n = norm();
    if (n <= 0.0) {
        throw NonUnitQuaternion("cannot normalize zero quaternion");
    }
    return {x / n, y / n, z / n, w / n};
}

Mat3 quat_to_rotation(const Quaternion& q_in) {
    if (std::abs(q_in.norm() - 1.0) > kUnitTol) {
        throw NonUnitQuaternion("quaternion norm deviates from 1 by more than 1e-6");
    }
    const Quaternion q = q_in.normalized();
    const double x = q.x, y = q.y, z = q.z, w = q.w;

    Mat3 r;
    r << 1.0 - 2.0 * y * y - 2.0 * z * z, 2.0 * x * y - 2.0 * w * z,
        2.0 * x * z + 2.0 * w * y,
        2.0 * x * y + 2.0 * w * z, 1.0 - 2.0 * x * x - 2.0 * z * z,
        2.0 * y * z - 2.0 * w * x,
        2.0 * x * z - 2.0 * y * w, 2.0 * y * z + 2.0 * w * x,
        1.0 - 2.0 * x * x - 2.0 * y * y;
    return r;
}

Quaternion rotation_to_quat(const Mat3& r) {
    const double ortho_err = (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
    if (ortho_err > kOrthoTol || r.determinant() < 0.0) {
        throw NotARotation("matrix is not a proper rotation");
    }

    Quaternion q;
    const double trace = r.trace();
    if (trace >= r(0, 0) && trace >= r(1, 1) && trace >= r(2, 2)) {
        const double s = std::sqrt(trace + 1.0) * 2.0;  // s = 4w
        q.w = 0.25 * s;
        q.x = (r(2, 1) - r(1, 2)) / s;
        q.y = (r(0, 2) - r(2, 0)) / s;
        q.z = (r(1, 0) - r(0, 1)) / s;
    } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
        const double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;  // s = 4x
        q.w = (r(2, 1) - r(1, 2)) / s;
        q.x = 0.25 * s;
        q.y = (r(0, 1) + r(1, 0)) / s;
        q.z = (r(0, 2) + r(2, 0)) / s;
    } else if (r(1, 1) >= r(2, 2)) {
        const double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2.0;  // s = 4y
        q.w = (r(0, 2) - r(2, 0)) / s;
        q.x = (r(0, 1) + r(1, 0)) / s;
        q.y = 0.25 * s;
        q.z = (r(1, 2) + r(2, 1)) / s;
    } else {
        const double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2.0;  // s = 4z
        q.w = (r(1, 0) - r(0, 1)) / s;
        q.x = (r(0, 2) + r(2, 0)) / s;
        q.y = (r(1, 2) + r(2, 1)) / s;
        q.z = 0.25 * s;
    }
    if (q.w < 0.0) {
        q = q.negated();
    }
    return q;
}

RigidTransform object_to_world_transform(const Pose& object_pose) {
    return {quat_to_rotation(object_pose.orientation), object_pose.position};
}

RigidTransform world_to_object_transform(const Pose& object_pose) {
    return invert(object_to_world_transform(object_pose));
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
    return {a.rotation * b.rotation, a.rotation * b.translation + a.translation};
}

RigidTransform invert(const RigidTransform& t) {
    const Mat3 rt = t.rotation.transpose();
    return {rt, -(rt * t.translation)};
}

Pose transform_pose(const RigidTransform& t, const Pose& pose) {
    const Mat3 rotated = t.rotation * quat_to_rotation(pose.orientation);
    return {t.apply(pose.position), rotation_to_quat(rotated)};
}

Pose express_in_object_frame(const Pose& robot_pose, const Pose& object_pose) {
    return transform_pose(world_to_object_transform(object_pose), robot_pose);
}

}  // namespace ocgp
