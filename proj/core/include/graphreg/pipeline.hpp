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

#include "graphreg/features.hpp"
#include "graphreg/geometry.hpp"
#include "graphreg/optimizer.hpp"

#include <array>
#include <optional>

namespace graphreg {

/// Full preprocessing chain for one cloud: graph construction, response
/// intensity, X84 outlier rejection, intensity-driven resampling, graph
/// rebuild, normal/curvature estimation, geometric invariant extraction
/// and standardization. Stage failures rethrow with the stage named.
FeatureCloud preprocess(const PointCloud& cloud, const RegistrationConfig& config);

struct RegistrationReport {
    RigidTransform transform;
    std::optional<double> ang_err_deg; // present iff ground truth was given
    std::optional<double> rmsd_value;
    double runtime_seconds = 0.0;
    int iterations = 0;
    std::array<int, 2> outliers_removed{0, 0}; // source, target
    std::array<int, 2> resampled_sizes{0, 0};
    IterationTrace trace;
    RegistrationConfig config;
};

/// End-to-end registration of source onto target. The returned transform
/// maps the original (pre-resampling) source coordinates.
RegistrationReport run(const PointCloud& source, const PointCloud& target,
                       const RegistrationConfig& config,
                       const std::optional<RigidTransform>& ground_truth = {});

/// Point-to-point ICP over raw positions: nearest-neighbor matches and a
/// closed-form least-squares fit per sweep. Serves as the comparison
/// baseline in the benchmark harness.
RegistrationReport icp_baseline(const PointCloud& source, const PointCloud& target,
                                const RegistrationConfig& config,
                                const std::optional<RigidTransform>& ground_truth = {});

} // namespace graphreg
