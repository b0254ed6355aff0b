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

#include "graphreg/synth.hpp"

#include "graphreg/errors.hpp"
#include "graphreg/rng.hpp"

#include <cmath>

namespace graphreg {

SynthPair synthesize_pair(const PointCloud& cloud, const PerturbationSpec& spec,
                          std::uint64_t seed) {
    if (cloud.size() == 0) {
        throw InvalidInputError("synthesize_pair: empty cloud");
    }
    if (spec.angle_max_deg < 0.0 || spec.noise_sigma < 0.0 || spec.outlier_ratio < 0.0) {
        throw InvalidInputError("synthesize_pair: negative perturbation parameter");
    }

    Rng rng(seed);
    SynthPair pair;
    pair.target = cloud;

    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& p : cloud.positions) centroid += p;
    centroid /= static_cast<double>(cloud.size());

    AxisAngle aa;
    aa.axis = rng.next_unit_vector();
    aa.angle = rng.next_uniform() * spec.angle_max_deg * M_PI / 180.0;
    const Eigen::Matrix3d r = rodrigues(aa);
    const RigidTransform perturb{r, centroid - r * centroid}; // rotate about the centroid

    pair.source.positions.reserve(cloud.size());
    for (const auto& p : cloud.positions) pair.source.positions.push_back(perturb(p));

    const Aabb box = bounding_box(cloud.positions);
    if (spec.noise_sigma > 0.0) {
        const Eigen::Vector3d sigma = spec.noise_sigma * box.extent();
        for (auto& p : pair.source.positions) {
            p.x() += sigma.x() * rng.next_normal();
            p.y() += sigma.y() * rng.next_normal();
            p.z() += sigma.z() * rng.next_normal();
        }
    }

    const int outliers =
        static_cast<int>(std::llround(spec.outlier_ratio * static_cast<double>(cloud.size())));
    pair.outlier_indices.reserve(outliers);
    for (int i = 0; i < outliers; ++i) {
        Eigen::Vector3d p;
        if (spec.outlier_kind == OutlierKind::gaussian) {
            p = box.center() + Eigen::Vector3d(box.extent().x() * rng.next_normal(),
                                               box.extent().y() * rng.next_normal(),
                                               box.extent().z() * rng.next_normal());
        } else {
            p = box.min + Eigen::Vector3d(box.extent().x() * rng.next_uniform(),
                                          box.extent().y() * rng.next_uniform(),
                                          box.extent().z() * rng.next_uniform());
        }
        pair.outlier_indices.push_back(static_cast<int>(pair.source.positions.size()));
        pair.source.positions.push_back(p);
    }

    pair.ground_truth = inverse(perturb);
    return pair;
}

} // namespace graphreg
