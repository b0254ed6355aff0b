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

#include "graphreg/dynamics.hpp"

#include "graphreg/errors.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>

namespace graphreg {

ParticleSystem build_particle_system(const PointCloud& cloud,
                                     const std::vector<double>& intensities) {
    if (intensities.size() != cloud.size()) {
        throw InvalidInputError("build_particle_system: intensity list does not match cloud");
    }
    if (cloud.size() == 0) {
        throw InvalidInputError("build_particle_system: empty cloud");
    }

    std::vector<double> positive;
    positive.reserve(intensities.size());
    for (double v : intensities) {
        if (v > 0.0) positive.push_back(v);
    }
    if (positive.empty()) {
        throw InvalidInputError("build_particle_system: all intensities are zero");
    }
    std::sort(positive.begin(), positive.end());
    const double floor = positive[positive.size() / 100];

    ParticleSystem system;
    system.positions = cloud.positions;
    system.masses.reserve(intensities.size());
    for (double v : intensities) {
        const double m = std::max(v, floor);
        system.masses.push_back(m);
        system.total_mass += m;
    }

    Eigen::Vector3d weighted = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < system.positions.size(); ++i) {
        weighted += system.masses[i] * system.positions[i];
    }
    system.mass_center = weighted / system.total_mass;
    for (std::size_t i = 0; i < system.positions.size(); ++i) {
        system.inertia +=
            system.masses[i] * (system.positions[i] - system.mass_center).squaredNorm();
    }
    return system;
}

namespace {

double kernel_value(double distance, KernelKind kernel) {
    const double g = std::exp(-distance * distance / 2.0);
    return kernel == KernelKind::corrected ? 2.0 * g - 1.0 : std::sqrt(2.0) / M_PI * g - 1.0;
}

} // namespace

CorrespondenceSet match_features(const std::vector<double>& vg_source,
                                 const std::vector<double>& vg_target,
                                 KernelKind kernel) {
    if (vg_source.empty() || vg_target.empty()) {
        throw InvalidInputError("match_features: empty feature list");
    }

    // sort targets by (value, index); the head of each equal-value run is
    // the smallest index, which is what ties resolve to
    std::vector<std::pair<double, int>> sorted;
    sorted.reserve(vg_target.size());
    for (std::size_t j = 0; j < vg_target.size(); ++j) {
        sorted.emplace_back(vg_target[j], static_cast<int>(j));
    }
    std::sort(sorted.begin(), sorted.end());

    auto run_head = [&sorted](std::size_t pos) {
        const double v = sorted[pos].first;
        const auto it = std::lower_bound(
            sorted.begin(), sorted.end(), std::make_pair(v, std::numeric_limits<int>::min()));
        return *it;
    };

    CorrespondenceSet corr;
    corr.reserve(vg_source.size());
    for (std::size_t i = 0; i < vg_source.size(); ++i) {
        const double v = vg_source[i];
        const auto it = std::lower_bound(
            sorted.begin(), sorted.end(), std::make_pair(v, std::numeric_limits<int>::min()));
        const std::size_t above = static_cast<std::size_t>(it - sorted.begin());

        std::pair<double, int> best;
        if (above == sorted.size()) {
            best = run_head(above - 1);
        } else if (above == 0) {
            best = run_head(0);
        } else {
            const auto lo = run_head(above - 1);
            const auto hi = run_head(above);
            const double d_lo = std::abs(v - lo.first);
            const double d_hi = std::abs(v - hi.first);
            if (d_lo < d_hi) {
                best = lo;
            } else if (d_hi < d_lo) {
                best = hi;
            } else {
                best = lo.second < hi.second ? lo : hi;
            }
        }
        corr.push_back({static_cast<int>(i), best.second,
                        kernel_value(std::abs(v - best.first), kernel)});
    }
    return corr;
}

ForceField compute_forces(const std::vector<Eigen::Vector3d>& source,
                          const std::vector<Eigen::Vector3d>& target,
                          const CorrespondenceSet& correspondences) {
    if (correspondences.size() != source.size()) {
        throw InvalidInputError("compute_forces: correspondence must cover all source points");
    }

    std::vector<Eigen::Vector3d> joint = source;
    joint.insert(joint.end(), target.begin(), target.end());
    const double eps = 1e-9 * bounding_box(joint).diagonal();

    ForceField field;
    field.per_point.assign(source.size(), Eigen::Vector3d::Zero());
    for (const auto& c : correspondences) {
        const Eigen::Vector3d diff = target[c.target] - source[c.source];
        const double dist = std::max(diff.norm(), eps);
        field.per_point[c.source] = c.coefficient * diff / (dist * dist * dist);
    }
    for (const auto& f : field.per_point) field.total += f;
    return field;
}

namespace {

// clamp |v| to cap, keeping direction
Eigen::Vector3d clamp_norm(const Eigen::Vector3d& v, double cap) {
    const double n = v.norm();
    if (n <= cap || n == 0.0) return v;
    return v * (cap / n);
}

} // namespace

StepResult dynamics_step(const ParticleSystem& system, const ForceField& forces,
                         const StepLimits& limits) {
    if (forces.per_point.size() != system.positions.size()) {
        throw InvalidInputError("dynamics_step: force field does not match particle system");
    }
    if (!(system.total_mass > 0.0)) {
        throw InvalidInputError("dynamics_step: particle system has no mass");
    }

    StepResult step;
    step.per_point_forces = forces.per_point;

    Eigen::Vector3d accel = forces.total / system.total_mass;
    accel = clamp_norm(accel, 2.0 * limits.max_translation);
    step.translation = accel / 2.0;

    Eigen::Vector3d torque = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < system.positions.size(); ++i) {
        torque += (system.positions[i] - system.mass_center).cross(forces.per_point[i]);
    }

    Eigen::Vector3d angular = Eigen::Vector3d::Zero();
    if (system.inertia > 0.0 && torque.norm() > 0.0) {
        angular = clamp_norm(torque / system.inertia, 2.0 * limits.max_rotation);
        step.axis_angle.axis = torque.normalized();
        step.axis_angle.angle = angular.norm() / 2.0;
    } else {
        // no resolvable rotation: inertia-free system or vanishing torque
        step.axis_angle.axis = Eigen::Vector3d::UnitZ();
        step.axis_angle.angle = 0.0;
    }

    // wrap into [0, pi] so the axis-angle stays canonical
    if (step.axis_angle.angle > M_PI) {
        double wrapped = std::fmod(step.axis_angle.angle, 2.0 * M_PI);
        if (wrapped > M_PI) {
            wrapped = 2.0 * M_PI - wrapped;
            step.axis_angle.axis = -step.axis_angle.axis;
        }
        step.axis_angle.angle = wrapped;
    }

    step.energy = 0.5 * system.total_mass * accel.squaredNorm() +
                  0.5 * system.inertia * angular.squaredNorm();
    return step;
}

RigidTransform step_to_transform(const StepResult& step, const Eigen::Vector3d& pivot) {
    const Eigen::Matrix3d r = rodrigues(step.axis_angle);
    return {r, pivot - r * pivot + step.translation};
}

} // namespace graphreg
