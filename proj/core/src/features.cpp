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

#include "graphreg/features.hpp"

#include "graphreg/errors.hpp"
#include "graphreg/kdtree.hpp"
#include "graphreg/robust.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace graphreg {

ResampleResult resample(const PointCloud& cloud, const std::vector<double>& intensities,
                        double rate) {
    if (intensities.size() != cloud.size()) {
        throw InvalidInputError("resample: intensity list does not match cloud size");
    }
    if (!(rate > 0.0) || rate > 1.0) {
        throw InvalidInputError("resample: rate must lie in (0, 1]");
    }
    const int n = static_cast<int>(cloud.size());
    const int keep = static_cast<int>(std::ceil(rate * n));
    if (keep < 4) {
        throw InvalidInputError("resample: rate " + std::to_string(rate) + " on " +
                                std::to_string(n) + " points keeps fewer than 4");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&intensities](int a, int b) {
        if (intensities[a] != intensities[b]) return intensities[a] > intensities[b];
        return a < b;
    });
    order.resize(keep);

    ResampleResult result;
    result.index_map = order;
    result.cloud.positions.reserve(keep);
    for (int idx : order) result.cloud.positions.push_back(cloud.positions[idx]);
    if (cloud.has_normals()) {
        result.cloud.normals.reserve(keep);
        for (int idx : order) result.cloud.normals.push_back(cloud.normals[idx]);
    }
    if (cloud.has_curvatures()) {
        result.cloud.curvatures.reserve(keep);
        for (int idx : order) result.cloud.curvatures.push_back(cloud.curvatures[idx]);
    }
    if (cloud.has_intensities()) {
        result.cloud.intensities.reserve(keep);
        for (int idx : order) result.cloud.intensities.push_back(cloud.intensities[idx]);
    }
    return result;
}

PointCloud estimate_normals_curvatures(const PointCloud& cloud, int k) {
    const int n = static_cast<int>(cloud.size());
    if (k < 1) {
        throw InvalidInputError("estimate_normals_curvatures: k must be >= 1");
    }
    if (n < k + 1) {
        throw InvalidInputError("estimate_normals_curvatures: need at least k+1 points");
    }

    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& p : cloud.positions) centroid += p;
    centroid /= static_cast<double>(n);

    const KdTree3 tree(cloud.positions);
    PointCloud out = cloud;
    out.normals.assign(n, Eigen::Vector3d::UnitZ());
    out.curvatures.assign(n, 0.0);

    for (int i = 0; i < n; ++i) {
        const auto nbrs = tree.knn(cloud.positions[i], k, i);
        Eigen::Vector3d mean = cloud.positions[i];
        for (const auto& nb : nbrs) mean += cloud.positions[nb.index];
        mean /= static_cast<double>(nbrs.size() + 1);

        Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
        {
            const Eigen::Vector3d d = cloud.positions[i] - mean;
            cov += d * d.transpose();
        }
        for (const auto& nb : nbrs) {
            const Eigen::Vector3d d = cloud.positions[nb.index] - mean;
            cov += d * d.transpose();
        }

        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
        const Eigen::Vector3d lambda = eig.eigenvalues(); // ascending
        const double total = lambda.sum();
        if (!(total > 0.0)) {
            throw DegenerateNeighborhoodError(
                "estimate_normals_curvatures: coincident neighborhood at index " +
                std::to_string(i));
        }

        Eigen::Vector3d normal = eig.eigenvectors().col(0).normalized();
        const Eigen::Vector3d offset = cloud.positions[i] - centroid;
        const double outward = normal.dot(offset);
        // dots at numerical zero count as ties and resolve to the
        // lexicographically positive representative
        const double tie_band = 1e-12 * offset.norm();
        if (outward < -tie_band) {
            normal = -normal;
        } else if (outward <= tie_band) {
            for (int c = 0; c < 3; ++c) {
                if (std::abs(normal[c]) > 1e-9) {
                    if (normal[c] < 0.0) normal = -normal;
                    break;
                }
            }
        }
        out.normals[i] = normal;
        out.curvatures[i] = std::clamp(std::max(lambda[0], 0.0) / total, 0.0, 1.0 / 3.0);
    }
    return out;
}

Eigen::VectorXd graph_gradient(const Eigen::MatrixXd& signal, const NeighborGraph& graph,
                               int i) {
    if (signal.rows() != static_cast<Eigen::Index>(graph.size())) {
        throw InvalidInputError("graph_gradient: signal length does not match point count");
    }
    if (i < 0 || i >= static_cast<int>(graph.size())) {
        throw InvalidInputError("graph_gradient: index " + std::to_string(i) +
                                " out of range");
    }
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(signal.cols());
    const auto& list = graph.neighbor_lists[i];
    const auto& w = graph.weights[i];
    for (std::size_t e = 0; e < list.size(); ++e) {
        grad += std::sqrt(w[e]) * (signal.row(i) - signal.row(list[e])).transpose();
    }
    return grad;
}

std::vector<double> geometric_invariant(const PointCloud& cloud, const NeighborGraph& graph) {
    const std::size_t n = cloud.size();
    if (graph.size() != n) {
        throw InvalidInputError("geometric_invariant: graph was not built over this cloud");
    }
    if (!cloud.has_normals() || !cloud.has_curvatures()) {
        throw InvalidInputError("geometric_invariant: cloud lacks normals or curvatures");
    }

    std::vector<double> vg(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& list = graph.neighbor_lists[i];
        const auto& w = graph.weights[i];
        double acc = 0.0;
        for (std::size_t e = 0; e < list.size(); ++e) {
            const std::size_t j = static_cast<std::size_t>(list[e]);
            Eigen::Vector4d diff;
            diff.head<3>() = cloud.normals[i] - cloud.normals[j];
            diff[3] = cloud.curvatures[i] - cloud.curvatures[j];
            acc += w[e] * diff.squaredNorm();
        }
        vg[i] = acc;
    }
    return vg;
}

std::vector<double> standardize(const std::vector<double>& values) {
    const double med = median(values);
    double scale = mad(values);
    if (scale == 0.0) scale = 1.0;
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back((v - med) / scale);
    return out;
}

} // namespace graphreg
