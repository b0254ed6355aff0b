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

#include <vector>

namespace graphreg {

/// Directed k-NN graph with Gaussian edge weights. Each point i carries a
/// per-point distance threshold tau_i (distance to its k-th nearest
/// neighbor) and bandwidth sigma_i^2 = tau_i^2 / 2; the weight of edge
/// (i, j) is exp(-|x_i - x_j|^2 / sigma_i^2), always in (0, 1].
struct NeighborGraph {
    std::vector<std::vector<int>> neighbor_lists;
    std::vector<std::vector<double>> weights; // parallel to neighbor_lists
    std::vector<double> degrees;              // d_i = sum_j W_ij
    std::vector<double> tau;
    std::vector<double> sigma_sq;

    std::size_t size() const { return neighbor_lists.size(); }
};

/// Polynomial filter coefficients h_0 .. h_{L-1}.
struct GraphFilter {
    std::vector<double> coefficients;
};

/// Graph shift operator choice: transition matrix D^-1 W or Laplacian D - W.
enum class ShiftKind { transition, laplacian };

/// Builds the directed k-NN graph. Requires at least k+1 points. Points
/// whose entire neighborhood is coincident (tau_i = 0) raise
/// DegenerateNeighborhoodError naming the offending indices.
NeighborGraph build_graph(const PointCloud& cloud, int k = 10);

/// Applies sum_l h_l A^l to a per-point signal (one row per point). The
/// powers are evaluated sparsely through the neighbor lists. A zero-degree
/// point under the transition shift raises DegenerateNeighborhoodError.
Eigen::MatrixXd apply_filter(const GraphFilter& filter, const NeighborGraph& graph,
                             const Eigen::MatrixXd& signal, ShiftKind shift);

/// Point response intensity: squared norm of the Haar-like high-pass
/// response (I - D^-1 W) applied to the positions. Non-negative, and
/// invariant under rigid motion of the cloud.
std::vector<double> response_intensity(const PointCloud& cloud, const NeighborGraph& graph);

} // namespace graphreg
