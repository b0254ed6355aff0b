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

#include <cstdint>
#include <vector>

namespace graphreg {

enum class OutlierKind { gaussian, uniform };

/// Synthetic-pair recipe. Noise and outlier scales are relative to the
/// cloud's per-axis bounding-box extents.
struct PerturbationSpec {
    double angle_max_deg = 0.0;  // rotation angle drawn uniformly in [0, max]
    double noise_sigma = 0.0;    // per-axis Gaussian noise, fraction of extent
    double outlier_ratio = 0.0;  // injected outliers as a fraction of N
    OutlierKind outlier_kind = OutlierKind::gaussian;
};

struct SynthPair {
    PointCloud source;
    PointCloud target;
    RigidTransform ground_truth;      // maps the source back onto the target
    std::vector<int> outlier_indices; // indices into source
};

/// target = cloud; source = a random rotation of the cloud about its
/// centroid (uniform axis, uniform angle), plus per-axis Gaussian noise,
/// plus appended outliers: Gaussian ones centered on the bounding box with
/// per-axis std equal to the box sides, uniform ones inside the box. All
/// randomness flows from the seed.
SynthPair synthesize_pair(const PointCloud& cloud, const PerturbationSpec& spec,
                          std::uint64_t seed);

} // namespace graphreg
