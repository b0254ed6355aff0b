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

#include "graphreg/geometry.hpp"

#include "graphreg/errors.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>

namespace graphreg {

Aabb bounding_box(const std::vector<Eigen::Vector3d>& points) {
    if (points.empty()) {
        throw InvalidInputError("bounding_box: empty point set");
    }
    Aabb box{points.front(), points.front()};
    for (const auto& p : points) {
        box.min = box.min.cwiseMin(p);
        box.max = box.max.cwiseMax(p);
    }
    return box;
}

bool is_rotation(const Eigen::Matrix3d& m, double tol) {
    const Eigen::Matrix3d residual = m * m.transpose() - Eigen::Matrix3d::Identity();
    return residual.cwiseAbs().maxCoeff() <= tol && std::abs(m.determinant() - 1.0) <= tol;
}

namespace {

Eigen::Matrix3d skew(const Eigen::Vector3d& v) {
    Eigen::Matrix3d k;
    k << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
        -v.y(), v.x(), 0.0;
    return k;
}

} // namespace

Eigen::Matrix3d rodrigues(const AxisAngle& aa) {
    if (std::abs(aa.axis.norm() - 1.0) > 1e-9) {
        throw InvalidInputError("rodrigues: axis is not unit length");
    }
    const Eigen::Matrix3d k = skew(aa.axis);
    return Eigen::Matrix3d::Identity() + std::sin(aa.angle) * k +
           (1.0 - std::cos(aa.angle)) * (k * k);
}

AxisAngle axis_angle_from_rotation(const Eigen::Matrix3d& rotation) {
    if (!is_rotation(rotation)) {
        throw InvalidInputError("axis_angle_from_rotation: input is not a rotation matrix");
    }
    const double cos_angle = std::clamp((rotation.trace() - 1.0) / 2.0, -1.0, 1.0);
    const double angle = std::acos(cos_angle);

    AxisAngle aa;
    aa.angle = angle;
    const Eigen::Vector3d antisym(rotation(2, 1) - rotation(1, 2),
                                  rotation(0, 2) - rotation(2, 0),
                                  rotation(1, 0) - rotation(0, 1));
    const double sin_angle = std::sin(angle);
    if (sin_angle > 1e-7) {
        aa.axis = antisym / (2.0 * sin_angle);
        aa.axis.normalize();
    } else if (cos_angle > 0.0) {
        // angle ~ 0: axis is arbitrary
        aa.axis = Eigen::Vector3d::UnitZ();
        aa.angle = 0.0;
    } else {
        // angle ~ pi: recover the axis from R + I, whose columns are
        // parallel to it
        const Eigen::Matrix3d b = 0.5 * (rotation + Eigen::Matrix3d::Identity());
        int major = 0;
        b.diagonal().maxCoeff(&major);
        Eigen::Vector3d axis = b.col(major) / std::sqrt(std::max(b(major, major), 1e-300));
        axis.normalize();
        // sign is only observable away from exactly pi; use the antisymmetric
        // part when it is nonzero, else pick the lexicographically positive
        // representative
        if (antisym.norm() > 0.0) {
            if (antisym.dot(axis) < 0.0) axis = -axis;
        } else {
            for (int i = 0; i < 3; ++i) {
                if (axis[i] != 0.0) {
                    if (axis[i] < 0.0) axis = -axis;
                    break;
                }
            }
        }
        aa.axis = axis;
    }
    return aa;
}

PointCloud apply(const RigidTransform& t, const PointCloud& cloud) {
    PointCloud out;
    out.positions.reserve(cloud.positions.size());
    for (const auto& p : cloud.positions) {
        out.positions.push_back(t.rotation * p + t.translation);
    }
    out.normals.reserve(cloud.normals.size());
    for (const auto& n : cloud.normals) {
        out.normals.push_back(t.rotation * n);
    }
    out.curvatures = cloud.curvatures;
    out.intensities = cloud.intensities;
    return out;
}

void apply_in_place(const RigidTransform& t, std::vector<Eigen::Vector3d>& points) {
    for (auto& p : points) {
        p = t.rotation * p + t.translation;
    }
}

RigidTransform compose(const RigidTransform& outer, const RigidTransform& inner) {
    return {outer.rotation * inner.rotation,
            outer.rotation * inner.translation + outer.translation};
}

RigidTransform inverse(const RigidTransform& t) {
    return {t.rotation.transpose(), -(t.rotation.transpose() * t.translation)};
}

double ang_err(const Eigen::Matrix3d& r_hat, const Eigen::Matrix3d& r_true) {
    if (!is_rotation(r_hat) || !is_rotation(r_true)) {
        throw InvalidInputError("ang_err: input is not a rotation matrix");
    }
    const double arg = std::clamp(((r_hat * r_true.transpose()).trace() - 1.0) / 2.0, -1.0, 1.0);
    return std::acos(arg) * 180.0 / M_PI;
}

double rmsd(const RigidTransform& t_hat, const RigidTransform& t_true,
            const PointCloud& cloud) {
    if (cloud.positions.empty()) {
        throw InvalidInputError("rmsd: empty cloud");
    }
    double sum = 0.0;
    for (const auto& p : cloud.positions) {
        sum += (t_hat(p) - t_true(p)).squaredNorm();
    }
    return std::sqrt(sum / static_cast<double>(cloud.positions.size()));
}

} // namespace graphreg
