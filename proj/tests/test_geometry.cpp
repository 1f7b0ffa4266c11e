#include <doctest.h>

#include <random>

#include <Eigen/Geometry>

#include "ocgp/errors.hpp"
#include "ocgp/geometry.hpp"
#include "test_helpers.hpp"

using namespace ocgp;
using namespace ocgp::testing;

namespace {

Mat3 reference_rotation(const Quaternion& q) {
    // Independent path: Eigen's scalar-first constructor.
    return Eigen::Quaterniond(q.w, q.x, q.y, q.z).normalized().toRotationMatrix();
}

}  // namespace

TEST_CASE("quat_to_rotation on the canonical cases") {
    const Mat3 identity = quat_to_rotation({0, 0, 0, 1});
    CHECK((identity - Mat3::Identity()).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

    // Half-turn about x.
    const Mat3 half_x = quat_to_rotation({1, 0, 0, 0});
    Mat3 expected_half_x;
    expected_half_x << 1, 0, 0, 0, -1, 0, 0, 0, -1;
    CHECK((half_x - expected_half_x).cwiseAbs().maxCoeff() < 1e-15);

    // Quarter-turn about z, cross-checked against the reference routine.
    const Quaternion qz{0, 0, 0.70710678, 0.70710678};
    const Mat3 quarter_z = quat_to_rotation(qz);
    Mat3 expected_quarter_z;
    expected_quarter_z << 0, -1, 0, 1, 0, 0, 0, 0, 1;
    CHECK((quarter_z - expected_quarter_z).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((quarter_z - reference_rotation(qz)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("quat_to_rotation matches the reference routine on random quaternions") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Quaternion q = random_unit_quaternion(rng);
        CHECK((quat_to_rotation(q) - reference_rotation(q)).cwiseAbs().maxCoeff() <
              1e-12);
    }
}

TEST_CASE("quat_to_rotation rejects non-unit quaternions and normalizes near-unit") {
    CHECK_THROWS_AS(quat_to_rotation({0, 0, 0, 1.1}), NonUnitQuaternion);
    CHECK_THROWS_AS(quat_to_rotation({0, 0, 0, 0}), NonUnitQuaternion);
    const Mat3 r = quat_to_rotation({0, 0, 0, 1.0 + 5e-7});
    CHECK((r - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("quat_to_rotation output is orthonormal with det +1") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 10000; ++i) {
        const Mat3 r = quat_to_rotation(random_unit_quaternion(rng));
        CHECK((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(std::abs(r.determinant() - 1.0) <= 1e-9);
    }
}

TEST_CASE("double cover: q and -q give the same rotation") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const Quaternion q = random_unit_quaternion(rng);
        CHECK((quat_to_rotation(q) - quat_to_rotation(q.negated()))
                  .cwiseAbs()
                  .maxCoeff() < 1e-15);
    }
}

TEST_CASE("rotation_to_quat canonical cases") {
    const Quaternion qi = rotation_to_quat(Mat3::Identity());
    CHECK(quat_equal_up_to_sign(qi, {0, 0, 0, 1}, 1e-12));
    CHECK(qi.w >= 0.0);

    Mat3 half_x;
    half_x << 1, 0, 0, 0, -1, 0, 0, 0, -1;
    const Quaternion qx = rotation_to_quat(half_x);
    CHECK(quat_equal_up_to_sign(qx, {1, 0, 0, 0}, 1e-12));
}

TEST_CASE("rotation_to_quat round trips and returns w >= 0") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 1000; ++i) {
        const Mat3 r = quat_to_rotation(random_unit_quaternion(rng));
        const Quaternion q = rotation_to_quat(r);
        CHECK(q.w >= 0.0);
        CHECK(std::abs(q.norm() - 1.0) < 1e-9);
        CHECK((quat_to_rotation(q) - r).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("rotation_to_quat rejects non-rotations") {
    Mat3 scaled = 2.0 * Mat3::Identity();
    CHECK_THROWS_AS(rotation_to_quat(scaled), NotARotation);
    Mat3 reflection = Mat3::Identity();
    reflection(2, 2) = -1.0;
    CHECK_THROWS_AS(rotation_to_quat(reflection), NotARotation);
}

TEST_CASE("world_to_object_transform basics") {
    const RigidTransform t0 = world_to_object_transform(Pose::identity());
    CHECK((t0.rotation - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(t0.translation.cwiseAbs().maxCoeff() < 1e-15);

    Pose shifted;
    shifted.position = Vec3(1, 2, 0);
    const RigidTransform t1 = world_to_object_transform(shifted);
    CHECK((t1.rotation - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((t1.translation - Vec3(-1, -2, 0)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("world_to_object_transform inverts the forward transform") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 200; ++i) {
        const Pose pose = random_pose(rng);
        const RigidTransform fwd = object_to_world_transform(pose);
        const RigidTransform inv = world_to_object_transform(pose);
        const RigidTransform id = compose(fwd, inv);
        CHECK((id.rotation - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(id.translation.cwiseAbs().maxCoeff() <= 1e-9);
        const RigidTransform id2 = compose(inv, fwd);
        CHECK((id2.rotation - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(id2.translation.cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("express_in_object_frame basics") {
    std::mt19937_64 rng(41);
    const Pose pose = random_pose(rng);

    const Pose self = express_in_object_frame(pose, pose);
    CHECK(self.position.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(quat_equal_up_to_sign(self.orientation, {0, 0, 0, 1}, 1e-12));

    const Pose unchanged = express_in_object_frame(pose, Pose::identity());
    CHECK((unchanged.position - pose.position).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(quat_equal_up_to_sign(unchanged.orientation, pose.orientation, 1e-12));
}

TEST_CASE("express_in_object_frame is invariant to a common rigid motion") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 1000; ++i) {
        const Pose robot = random_pose(rng);
        const Pose object = random_pose(rng);
        const RigidTransform g = object_to_world_transform(random_pose(rng));

        const Pose rel = express_in_object_frame(robot, object);
        const Pose rel_moved =
            express_in_object_frame(transform_pose(g, robot), transform_pose(g, object));
        CHECK((rel.position - rel_moved.position).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(quat_equal_up_to_sign(rel.orientation, rel_moved.orientation, 1e-9));
    }
}

TEST_CASE("object frame round trip recovers the world pose") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 500; ++i) {
        const Pose robot = random_pose(rng);
        const Pose object = random_pose(rng);
        const Pose rel = express_in_object_frame(robot, object);
        const Pose back = transform_pose(object_to_world_transform(object), rel);
        CHECK((back.position - robot.position).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK(quat_equal_up_to_sign(back.orientation, robot.orientation, 1e-8));
    }
}
