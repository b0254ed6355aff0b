/*
 * Copyright (C) 2026 The GraphReg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace graphreg {

/// A point set with optional per-point surface attributes. Attribute
/// vectors are either empty or the same length as positions; normals are
/// unit length, curvatures and intensities non-negative.
struct PointCloud {
    std::vector<Eigen::Vector3d> positions;
    std::vector<Eigen::Vector3d> normals;
    std::vector<double> curvatures;
    std::vector<double> intensities;

    std::size_t size() const { return positions.size(); }
    bool has_normals() const { return !normals.empty(); }
    bool has_curvatures() const { return !curvatures.empty(); }
    bool has_intensities() const { return !intensities.empty(); }
};

/// Rotation (orthonormal, det +1) plus translation.
struct RigidTransform {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    Eigen::Vector3d operator()(const Eigen::Vector3d& p) const {
        return rotation * p + translation;
    }
};

/// Unit rotation axis and angle in [0, pi].
struct AxisAngle {
    Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
    double angle = 0.0;
};

/// Axis-aligned bounding box.
struct Aabb {
    Eigen::Vector3d min = Eigen::Vector3d::Zero();
    Eigen::Vector3d max = Eigen::Vector3d::Zero();

    Eigen::Vector3d extent() const { return max - min; }
    Eigen::Vector3d center() const { return 0.5 * (min + max); }
    double diagonal() const { return (max - min).norm(); }
};

Aabb bounding_box(const std::vector<Eigen::Vector3d>& points);

/// True when m is orthonormal with determinant +1, each within tol.
bool is_rotation(const Eigen::Matrix3d& m, double tol = 1e-9);

/// Rotation matrix for the given axis-angle. The axis must be unit length
/// within 1e-9, otherwise InvalidInputError.
Eigen::Matrix3d rodrigues(const AxisAngle& aa);

/// Inverse of rodrigues. Input must be a rotation matrix. The returned
/// angle lies in [0, pi]; at angle 0 the axis defaults to +z.
AxisAngle axis_angle_from_rotation(const Eigen::Matrix3d& rotation);

/// x <- R x + t for positions; normals rotate by R; curvatures and
/// intensities copy through unchanged.
PointCloud apply(const RigidTransform& t, const PointCloud& cloud);
void apply_in_place(const RigidTransform& t, std::vector<Eigen::Vector3d>& points);

/// compose(A, B) acts as A after B: apply(compose(A,B), x) == apply(A, apply(B, x)).
RigidTransform compose(const RigidTransform& outer, const RigidTransform& inner);
RigidTransform inverse(const RigidTransform& t);

/// Angular difference in degrees between two rotation matrices,
/// (180/pi) * arccos((Tr(R_hat R_true^T) - 1) / 2) with the arccos
/// argument clamped to [-1, 1]. Non-rotation inputs raise InvalidInputError.
double ang_err(const Eigen::Matrix3d& r_hat, const Eigen::Matrix3d& r_true);

/// Root-mean-squared distance between the two placements of the cloud.
/// Empty cloud raises InvalidInputError.
double rmsd(const RigidTransform& t_hat, const RigidTransform& t_true,
            const PointCloud& cloud);

} // namespace graphreg
