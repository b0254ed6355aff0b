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

#include "graphreg/pipeline.hpp"

#include "graphreg/errors.hpp"
#include "graphreg/kdtree.hpp"
#include "graphreg/robust.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <chrono>
#include <string>
#include <utility>

namespace graphreg {

namespace {

// rethrow with the failing stage named, preserving the error type
template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const InvalidInputError& e) {
        throw InvalidInputError(std::string("preprocess[") + name + "]: " + e.what());
    } catch (const DegenerateNeighborhoodError& e) {
        throw DegenerateNeighborhoodError(std::string("preprocess[") + name + "]: " +
                                          e.what());
    }
}

PointCloud select(const PointCloud& cloud, const std::vector<int>& indices) {
    PointCloud out;
    out.positions.reserve(indices.size());
    for (int i : indices) out.positions.push_back(cloud.positions[i]);
    if (cloud.has_normals()) {
        out.normals.reserve(indices.size());
        for (int i : indices) out.normals.push_back(cloud.normals[i]);
    }
    if (cloud.has_curvatures()) {
        out.curvatures.reserve(indices.size());
        for (int i : indices) out.curvatures.push_back(cloud.curvatures[i]);
    }
    if (cloud.has_intensities()) {
        out.intensities.reserve(indices.size());
        for (int i : indices) out.intensities.push_back(cloud.intensities[i]);
    }
    return out;
}

} // namespace

FeatureCloud preprocess(const PointCloud& cloud, const RegistrationConfig& config) {
    const NeighborGraph graph0 =
        stage("graph", [&] { return build_graph(cloud, config.knn_k); });
    const std::vector<double> intensity0 =
        stage("intensity", [&] { return response_intensity(cloud, graph0); });
    const OutlierReport report = stage("outliers", [&] {
        return x84_filter(cloud, intensity0, config.alpha, config.x84_rule);
    });

    PointCloud filtered = select(cloud, report.kept_indices);
    std::vector<double> filtered_intensity;
    filtered_intensity.reserve(report.kept_indices.size());
    for (int i : report.kept_indices) filtered_intensity.push_back(intensity0[i]);

    const ResampleResult resampled = stage("resample", [&] {
        return resample(filtered, filtered_intensity, config.resample_rate);
    });

    FeatureCloud features;
    features.removed_count = static_cast<int>(report.removed_indices.size());
    features.source_indices.reserve(resampled.index_map.size());
    for (int r : resampled.index_map) {
        features.source_indices.push_back(report.kept_indices[r]);
    }

    features.graph = stage("regraph", [&] {
        return build_graph(resampled.cloud, config.knn_k);
    });
    features.cloud = resampled.cloud;
    features.cloud.intensities = stage("reintensity", [&] {
        return response_intensity(features.cloud, features.graph);
    });
    features.cloud = stage("normals", [&] {
        return estimate_normals_curvatures(features.cloud, config.knn_k);
    });
    features.vg_raw = stage("invariant", [&] {
        return geometric_invariant(features.cloud, features.graph);
    });
    features.vg = standardize(features.vg_raw);
    return features;
}

RegistrationReport run(const PointCloud& source, const PointCloud& target,
                       const RegistrationConfig& config,
                       const std::optional<RigidTransform>& ground_truth) {
    const auto start = std::chrono::steady_clock::now();

    FeatureCloud source_features = preprocess(source, config);
    FeatureCloud target_features = preprocess(target, config);

    // restandardize both invariant lists with pooled statistics: matching
    // compares values across the clouds, so the two axes must share one
    // affine frame or every nearest-value lookup drifts off its counterpart
    {
        std::vector<double> pooled = source_features.vg_raw;
        pooled.insert(pooled.end(), target_features.vg_raw.begin(),
                      target_features.vg_raw.end());
        const double center = median(pooled);
        double scale = mad(pooled);
        if (scale == 0.0) scale = 1.0;
        auto restandardize = [&](FeatureCloud& fc) {
            for (std::size_t i = 0; i < fc.vg.size(); ++i) {
                fc.vg[i] = (fc.vg_raw[i] - center) / scale;
            }
        };
        restandardize(source_features);
        restandardize(target_features);
    }

    RigidTransform pre;
    if (config.center_clouds) {
        Eigen::Vector3d cs = Eigen::Vector3d::Zero();
        Eigen::Vector3d ct = Eigen::Vector3d::Zero();
        for (const auto& p : source.positions) cs += p;
        for (const auto& p : target.positions) ct += p;
        pre.translation = ct / static_cast<double>(target.size()) -
                          cs / static_cast<double>(source.size());
        apply_in_place(pre, source_features.cloud.positions);
    }

    OptimizeResult optimized = register_clouds(source_features, target_features, config);

    RegistrationReport report;
    report.transform = compose(optimized.transform, pre);
    report.trace = std::move(optimized.trace);
    report.iterations = static_cast<int>(report.trace.rows.size());
    report.outliers_removed = {source_features.removed_count,
                               target_features.removed_count};
    report.resampled_sizes = {static_cast<int>(source_features.cloud.size()),
                              static_cast<int>(target_features.cloud.size())};
    report.config = config;

    if (ground_truth) {
        report.ang_err_deg = ang_err(report.transform.rotation, ground_truth->rotation);
        report.rmsd_value = rmsd(report.transform, *ground_truth, source);
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

namespace {

// closed-form least-squares rigid fit of paired points via SVD
RigidTransform fit_pairs(const std::vector<Eigen::Vector3d>& from,
                         const std::vector<Eigen::Vector3d>& to) {
    Eigen::Vector3d cf = Eigen::Vector3d::Zero();
    Eigen::Vector3d ct = Eigen::Vector3d::Zero();
    const double n = static_cast<double>(from.size());
    for (const auto& p : from) cf += p;
    for (const auto& p : to) ct += p;
    cf /= n;
    ct /= n;

    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < from.size(); ++i) {
        h += (from[i] - cf) * (to[i] - ct).transpose();
    }
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d r = svd.matrixV() * svd.matrixU().transpose();
    if (r.determinant() < 0.0) {
        Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
        flip(2, 2) = -1.0;
        r = svd.matrixV() * flip * svd.matrixU().transpose();
    }
    return {r, ct - r * cf};
}

} // namespace

RegistrationReport icp_baseline(const PointCloud& source, const PointCloud& target,
                                const RegistrationConfig& config,
                                const std::optional<RigidTransform>& ground_truth) {
    if (source.size() == 0 || target.size() == 0) {
        throw InvalidInputError("icp_baseline: empty cloud");
    }
    const auto start = std::chrono::steady_clock::now();

    const KdTree3 tree(target.positions);
    std::vector<Eigen::Vector3d> moving = source.positions;
    std::vector<Eigen::Vector3d> matched(moving.size());

    RegistrationReport report;
    int iterations = 0;
    for (; iterations < config.max_iterations; ++iterations) {
        for (std::size_t i = 0; i < moving.size(); ++i) {
            matched[i] = target.positions[tree.nearest(moving[i])];
        }
        const RigidTransform increment = fit_pairs(moving, matched);
        apply_in_place(increment, moving);
        report.transform = compose(increment, report.transform);

        const double change = increment.translation.norm() +
                              (increment.rotation - Eigen::Matrix3d::Identity()).norm();
        if (change < 1e-10) {
            ++iterations;
            break;
        }
    }

    report.iterations = iterations;
    report.resampled_sizes = {static_cast<int>(source.size()),
                              static_cast<int>(target.size())};
    report.config = config;
    if (ground_truth) {
        report.ang_err_deg = ang_err(report.transform.rotation, ground_truth->rotation);
        report.rmsd_value = rmsd(report.transform, *ground_truth, source);
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace graphreg
