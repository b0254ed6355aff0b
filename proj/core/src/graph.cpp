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

#include "graphreg/graph.hpp"

#include "graphreg/errors.hpp"
#include "graphreg/kdtree.hpp"

#include <cmath>
#include <string>

namespace graphreg {

NeighborGraph build_graph(const PointCloud& cloud, int k) {
    const int n = static_cast<int>(cloud.size());
    if (k < 1) {
        throw InvalidInputError("build_graph: k must be >= 1");
    }
    if (n < k + 1) {
        throw InvalidInputError("build_graph: cloud has " + std::to_string(n) +
                                " points, need at least k+1 = " + std::to_string(k + 1));
    }

    const KdTree3 tree(cloud.positions);
    NeighborGraph graph;
    graph.neighbor_lists.resize(n);
    graph.weights.resize(n);
    graph.degrees.assign(n, 0.0);
    graph.tau.assign(n, 0.0);
    graph.sigma_sq.assign(n, 0.0);

    std::string degenerate;
    for (int i = 0; i < n; ++i) {
        const auto nbrs = tree.knn(cloud.positions[i], k, i);
        const double tau_sq = nbrs.back().sq_dist;
        if (tau_sq == 0.0) {
            degenerate += degenerate.empty() ? std::to_string(i) : ", " + std::to_string(i);
            continue;
        }
        graph.tau[i] = std::sqrt(tau_sq);
        graph.sigma_sq[i] = tau_sq / 2.0;

        auto& list = graph.neighbor_lists[i];
        auto& w = graph.weights[i];
        list.reserve(nbrs.size());
        w.reserve(nbrs.size());
        for (const auto& nb : nbrs) {
            list.push_back(nb.index);
            const double weight = std::exp(-nb.sq_dist / graph.sigma_sq[i]);
            w.push_back(weight);
            graph.degrees[i] += weight;
        }
    }
    if (!degenerate.empty()) {
        throw DegenerateNeighborhoodError(
            "build_graph: coincident neighborhoods (tau = 0) at indices " + degenerate);
    }
    return graph;
}

namespace {

// one application of the shift operator, row by row
Eigen::MatrixXd shift_once(const NeighborGraph& graph, const Eigen::MatrixXd& signal,
                           ShiftKind shift) {
    const int n = static_cast<int>(graph.size());
    Eigen::MatrixXd out(n, signal.cols());
    for (int i = 0; i < n; ++i) {
        Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(signal.cols());
        const auto& list = graph.neighbor_lists[i];
        const auto& w = graph.weights[i];
        for (std::size_t e = 0; e < list.size(); ++e) {
            acc += w[e] * signal.row(list[e]);
        }
        if (shift == ShiftKind::transition) {
            if (graph.degrees[i] <= 0.0) {
                throw DegenerateNeighborhoodError(
                    "apply_filter: zero-degree point " + std::to_string(i) +
                    " under transition shift");
            }
            out.row(i) = acc / graph.degrees[i];
        } else {
            out.row(i) = graph.degrees[i] * signal.row(i) - acc;
        }
    }
    return out;
}

} // namespace

Eigen::MatrixXd apply_filter(const GraphFilter& filter, const NeighborGraph& graph,
                             const Eigen::MatrixXd& signal, ShiftKind shift) {
    if (filter.coefficients.empty()) {
        throw InvalidInputError("apply_filter: filter needs at least one coefficient");
    }
    if (signal.rows() != static_cast<Eigen::Index>(graph.size())) {
        throw InvalidInputError("apply_filter: signal length does not match point count");
    }

    Eigen::MatrixXd out = filter.coefficients[0] * signal;
    Eigen::MatrixXd power = signal;
    for (std::size_t l = 1; l < filter.coefficients.size(); ++l) {
        power = shift_once(graph, power, shift);
        out += filter.coefficients[l] * power;
    }
    return out;
}

std::vector<double> response_intensity(const PointCloud& cloud, const NeighborGraph& graph) {
    if (cloud.size() != graph.size()) {
        throw InvalidInputError("response_intensity: graph was not built over this cloud");
    }
    Eigen::MatrixXd positions(cloud.size(), 3);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        positions.row(i) = cloud.positions[i].transpose();
    }
    const GraphFilter haar{{1.0, -1.0}};
    const Eigen::MatrixXd response =
        apply_filter(haar, graph, positions, ShiftKind::transition);

    std::vector<double> intensity(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        intensity[i] = response.row(i).squaredNorm();
    }
    return intensity;
}

} // namespace graphreg
