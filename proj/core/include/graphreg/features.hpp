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
#include "graphreg/graph.hpp"

#include <Eigen/Core>

#include <vector>

namespace graphreg {

struct ResampleResult {
    PointCloud cloud;
    /// index_map[r] is the original index of resampled point r, ordered by
    /// descending intensity (ties by ascending original index).
    std::vector<int> index_map;
};

/// Keeps the ceil(rate * N) points of highest intensity. rate is in (0, 1];
/// results smaller than 4 points raise InvalidInputError.
ResampleResult resample(const PointCloud& cloud, const std::vector<double>& intensities,
                        double rate);

/// PCA plane fit over each point's k-neighborhood (point included).
/// normal = eigenvector of the smallest covariance eigenvalue, oriented so
/// it points away from the cloud centroid; curvature = l0/(l0+l1+l2), in
/// [0, 1/3]. A fully coincident neighborhood raises
/// DegenerateNeighborhoodError.
PointCloud estimate_normals_curvatures(const PointCloud& cloud, int k = 10);

/// Graph gradient of a per-point signal (one row per point) at point i:
/// sum over neighbors of sqrt(W_ij) * (s_i - s_j).
Eigen::VectorXd graph_gradient(const Eigen::MatrixXd& signal, const NeighborGraph& graph,
                               int i);

/// Geometric invariant V_g(x_i) = sum_j W_ij |s_i - s_j|^2 with the signal
/// s = (nx, ny, nz, curvature). Requires normals and curvatures.
std::vector<double> geometric_invariant(const PointCloud& cloud, const NeighborGraph& graph);

/// (v - median) / MAD, with the scale defaulting to 1 when MAD is zero.
std::vector<double> standardize(const std::vector<double>& values);

/// Output of the preprocessing chain: a resampled cloud carrying normals,
/// curvatures, recomputed intensities, its rebuilt graph, and the
/// standardized geometric invariant. vg_raw keeps the unstandardized
/// values so a registration run can restandardize source and target with
/// pooled statistics (nearest-value matching needs both value axes on one
/// scale).
struct FeatureCloud {
    PointCloud cloud;
    NeighborGraph graph;
    std::vector<double> vg;
    std::vector<double> vg_raw;
    std::vector<int> source_indices; // resampled -> index in the input cloud
    int removed_count = 0;           // points dropped by outlier rejection
};

} // namespace graphreg
