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

#include "test_clouds.hpp"

#include <cmath>

namespace graphreg::testing {

PointCloud make_surface(int n, std::uint64_t seed) {
    Rng rng(seed);
    // salient regions with log-spaced curvature scales, so each region's
    // feature band stays distinct under perturbation
    std::vector<Eigen::Vector3d> centers;
    const int bumps = 8;
    for (int b = 0; b < bumps; ++b) {
        const double z = 1.0 - 2.0 * (b + 0.5) / bumps;
        const double phi = 2.39996322972865332 * b; // golden-angle spiral
        const double r = std::sqrt(1.0 - z * z);
        centers.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
    }
    const double jitter = 0.2 * std::sqrt(4.0 * M_PI / n); // scan-like micro texture
    const double kappa0 = 1.5;
    const double ratio = std::pow(8.0 / kappa0, 1.0 / (bumps - 1));

    PointCloud cloud;
    cloud.positions.reserve(n);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d d = rng.next_unit_vector();
        double r = 1.0;
        r += 0.02 * std::sin(4.0 * d.x() + 1.0) * std::sin(5.0 * d.y());
        r += 0.015 * std::sin(7.0 * d.y() - 0.5) * std::sin(6.0 * d.z());
        double kappa = kappa0;
        for (int b = 0; b < bumps; ++b, kappa *= ratio) {
            const double wid = std::sqrt(0.42 / kappa);
            r += kappa * wid * wid * std::exp(-(d - centers[b]).squaredNorm() / (wid * wid));
        }
        r += jitter * rng.next_normal();
        Eigen::Vector3d p = r * d;
        p.x() *= 1.9;
        p.z() *= 0.62;
        cloud.positions.push_back(p);
    }
    return cloud;
}

PointCloud make_plane(int per_side, double spacing, double jitter, std::uint64_t seed) {
    Rng rng(seed);
    PointCloud cloud;
    cloud.positions.reserve(static_cast<std::size_t>(per_side) * per_side);
    for (int i = 0; i < per_side; ++i) {
        for (int j = 0; j < per_side; ++j) {
            const double dx = jitter * spacing * (2.0 * rng.next_uniform() - 1.0);
            const double dy = jitter * spacing * (2.0 * rng.next_uniform() - 1.0);
            cloud.positions.emplace_back(i * spacing + dx, j * spacing + dy, 0.0);
        }
    }
    return cloud;
}

PointCloud make_volume(int n, std::uint64_t seed) {
    Rng rng(seed);
    PointCloud cloud;
    cloud.positions.reserve(n);
    for (int i = 0; i < n; ++i) {
        cloud.positions.emplace_back(rng.next_uniform(), rng.next_uniform(),
                                     rng.next_uniform());
    }
    return cloud;
}

RigidTransform random_transform(Rng& rng, double max_angle_rad, double translation) {
    AxisAngle aa;
    aa.axis = rng.next_unit_vector();
    aa.angle = rng.next_uniform() * max_angle_rad;
    RigidTransform t;
    t.rotation = rodrigues(aa);
    t.translation = Eigen::Vector3d(rng.next_uniform(-translation, translation),
                                    rng.next_uniform(-translation, translation),
                                    rng.next_uniform(-translation, translation));
    return t;
}

} // namespace graphreg::testing
