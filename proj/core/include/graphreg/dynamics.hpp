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

#include "graphreg/geometry.hpp"

#include <Eigen/Core>

#include <limits>
#include <vector>

namespace graphreg {

/// Point masses (response intensities) with the derived aggregates. Masses
/// are floored at the 1st percentile of the positive intensities so no
/// particle is massless after filtering.
struct ParticleSystem {
    std::vector<Eigen::Vector3d> positions;
    std::vector<double> masses;
    double total_mass = 0.0;                             // G
    Eigen::Vector3d mass_center = Eigen::Vector3d::Zero(); // c
    double inertia = 0.0;                                // J = sum m_i |x_i - c|^2
};

ParticleSystem build_particle_system(const PointCloud& cloud,
                                     const std::vector<double>& intensities);

/// One deterministic match per source point plus the attraction/repulsion
/// coefficient k in [-1, 1].
struct Correspondence {
    int source;
    int target;
    double coefficient;
};
using CorrespondenceSet = std::vector<Correspondence>;

/// Similarity kernel mapping feature distance d to a coefficient.
/// corrected: 2 exp(-d^2/2) - 1, spanning (-1, 1] with +1 at d = 0.
/// literal:   sqrt(2)/pi exp(-d^2/2) - 1, spanning (-1, sqrt(2)/pi - 1].
enum class KernelKind { corrected, literal };

/// Nearest-value matching in the (standardized) scalar feature space; ties
/// resolve to the smallest target index.
CorrespondenceSet match_features(const std::vector<double>& vg_source,
                                 const std::vector<double>& vg_target,
                                 KernelKind kernel = KernelKind::corrected);

struct ForceField {
    std::vector<Eigen::Vector3d> per_point;
    Eigen::Vector3d total = Eigen::Vector3d::Zero();
};

/// Coulomb-style force on each source point toward (or away from) its
/// match: k * (y - x) / max(|y - x|, eps)^3 with eps = 1e-9 times the
/// diagonal of the joint bounding box. Summation runs in ascending source
/// order, so the total is reproducible bit for bit.
ForceField compute_forces(const std::vector<Eigen::Vector3d>& source,
                          const std::vector<Eigen::Vector3d>& target,
                          const CorrespondenceSet& correspondences);

/// Optional bounds on one step's motion; directions are preserved, only
/// magnitudes clamp. Defaults leave the step unconstrained.
struct StepLimits {
    double max_translation = std::numeric_limits<double>::infinity();
    double max_rotation = std::numeric_limits<double>::infinity();
};

/// One rigid-dynamics step from rest: translation phi = a/2 and rotation
/// sigma = alpha/2 over a unit time interval, with the kinetic energy of
/// the executed motion.
struct StepResult {
    AxisAngle axis_angle;
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();
    double energy = 0.0;
    std::vector<Eigen::Vector3d> per_point_forces;
};

StepResult dynamics_step(const ParticleSystem& system, const ForceField& forces,
                         const StepLimits& limits = {});

/// Rigid transform rotating by the step's axis-angle about `pivot` and then
/// translating by the step's phi.
RigidTransform step_to_transform(const StepResult& step, const Eigen::Vector3d& pivot);

} // namespace graphreg
