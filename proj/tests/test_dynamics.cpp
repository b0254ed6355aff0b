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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "graphreg/dynamics.hpp"
#include "graphreg/errors.hpp"
#include "test_clouds.hpp"

#include <cmath>

using namespace graphreg;

namespace {

PointCloud cloud_at(std::vector<Eigen::Vector3d> positions) {
    PointCloud cloud;
    cloud.positions = std::move(positions);
    return cloud;
}

} // namespace

TEST_CASE("particle system from two unit masses") {
    const ParticleSystem system =
        build_particle_system(cloud_at({{1, 0, 0}, {-1, 0, 0}}), {1.0, 1.0});
    CHECK(system.total_mass == 2.0);
    CHECK(system.mass_center.norm() == 0.0);
    CHECK(system.inertia == 2.0);
}

TEST_CASE("particle system with unequal masses") {
    const ParticleSystem system =
        build_particle_system(cloud_at({{0, 0, 0}, {4, 0, 0}}), {3.0, 1.0});
    CHECK(system.total_mass == 4.0);
    CHECK((system.mass_center - Eigen::Vector3d(1, 0, 0)).norm() == 0.0);
    CHECK(system.inertia == doctest::Approx(12.0).epsilon(1e-15)); // 3*1 + 1*9
}

TEST_CASE("uniform masses put the center at the centroid") {
    const PointCloud cloud = testing::make_surface(100, 1);
    const ParticleSystem system =
        build_particle_system(cloud, std::vector<double>(100, 0.7));
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& p : cloud.positions) centroid += p;
    centroid /= 100.0;
    CHECK((system.mass_center - centroid).norm() < 1e-12);
}

TEST_CASE("zero intensities are floored, all-zero rejected") {
    std::vector<double> intensities(100, 1.0);
    intensities[3] = 0.0;
    const PointCloud cloud = testing::make_surface(100, 2);
    const ParticleSystem system = build_particle_system(cloud, intensities);
    CHECK(system.masses[3] > 0.0);

    CHECK_THROWS_AS(build_particle_system(cloud, std::vector<double>(100, 0.0)),
                    InvalidInputError);
}

TEST_CASE("matching identical distinct features is the identity pairing") {
    const std::vector<double> vg = {0.1, 0.7, -0.3, 1.9};
    const CorrespondenceSet corr = match_features(vg, vg);
    for (const auto& c : corr) {
        CHECK(c.target == c.source);
        CHECK(c.coefficient == doctest::Approx(1.0)); // equal features attract maximally
    }
}

TEST_CASE("nearest-value matching hand case") {
    const CorrespondenceSet corr = match_features({0.0, 2.0}, {1.9, 0.1});
    REQUIRE(corr.size() == 2);
    CHECK(corr[0].target == 1);
    CHECK(corr[1].target == 0);
}

TEST_CASE("matching ties resolve to the smallest target index") {
    // targets at 1 and 3 are equidistant from a source at 2
    const CorrespondenceSet corr = match_features({2.0}, {3.0, 1.0});
    CHECK(corr[0].target == 0); // value 3.0 sits at index 0 < index 1

    // duplicate target values: the smallest index of the winning run
    const CorrespondenceSet dup = match_features({5.2}, {5.1, 5.1, 5.1, 4.0});
    CHECK(dup[0].target == 0);
    const CorrespondenceSet shifted = match_features({5.2}, {4.0, 5.1, 5.1, 5.1});
    CHECK(shifted[0].target == 1);
}

TEST_CASE("kernel coefficients stay in [-1, 1] and decrease with distance") {
    Rng rng(3);
    double previous = 2.0;
    for (double d = 0.0; d < 12.0; d += 0.25) {
        const CorrespondenceSet corr = match_features({0.0}, {d});
        const double k = corr[0].coefficient;
        CHECK(k <= 1.0);
        CHECK(k >= -1.0);
        CHECK(k < previous + 1e-15);
        previous = k;
    }
    // far pairs approach full repulsion
    CHECK(match_features({0.0}, {50.0})[0].coefficient == doctest::Approx(-1.0));
}

TEST_CASE("literal kernel never attracts") {
    for (double d = 0.0; d < 5.0; d += 0.5) {
        const double k = match_features({0.0}, {d}, KernelKind::literal)[0].coefficient;
        CHECK(k <= std::sqrt(2.0) / M_PI - 1.0 + 1e-15);
        CHECK(k > -1.0);
    }
}

TEST_CASE("coincident matched points produce vanishing forces") {
    const std::vector<Eigen::Vector3d> pts = {{0, 0, 0}, {1, 1, 1}};
    CorrespondenceSet corr = {{0, 0, 1.0}, {1, 1, 1.0}};
    const ForceField field = compute_forces(pts, pts, corr);
    CHECK(field.per_point[0].norm() == 0.0);
    CHECK(field.per_point[1].norm() == 0.0);
    CHECK(field.total.norm() == 0.0);
}

TEST_CASE("single-pair force hand value") {
    const std::vector<Eigen::Vector3d> source = {{0, 0, 0}};
    const std::vector<Eigen::Vector3d> target = {{2, 0, 0}};
    const ForceField field = compute_forces(source, target, {{0, 0, 1.0}});
    CHECK((field.per_point[0] - Eigen::Vector3d(0.25, 0, 0)).norm() < 1e-15);

    const ForceField repulsive = compute_forces(source, target, {{0, 0, -1.0}});
    CHECK((repulsive.per_point[0] + field.per_point[0]).norm() == 0.0);
}

TEST_CASE("total force equals the ordered sum of per-point forces") {
    Rng rng(4);
    std::vector<Eigen::Vector3d> source, target;
    CorrespondenceSet corr;
    for (int i = 0; i < 200; ++i) {
        source.emplace_back(rng.next_uniform(-1, 1), rng.next_uniform(-1, 1),
                            rng.next_uniform(-1, 1));
        target.emplace_back(rng.next_uniform(-1, 1), rng.next_uniform(-1, 1),
                            rng.next_uniform(-1, 1));
        corr.push_back({i, i, rng.next_uniform(-1, 1)});
    }
    const ForceField field = compute_forces(source, target, corr);
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    for (const auto& f : field.per_point) sum += f;
    CHECK((field.total - sum).norm() == 0.0);
}

TEST_CASE("dynamics step with zero forces is the identity step") {
    const ParticleSystem system =
        build_particle_system(cloud_at({{1, 0, 0}, {-1, 0, 0}}), {1.0, 1.0});
    ForceField none;
    none.per_point.assign(2, Eigen::Vector3d::Zero());
    const StepResult step = dynamics_step(system, none);
    CHECK(step.axis_angle.angle == 0.0);
    CHECK(step.translation.norm() == 0.0);
    CHECK(step.energy == 0.0);
}

TEST_CASE("pure torque couple spins about +z") {
    const ParticleSystem system =
        build_particle_system(cloud_at({{1, 0, 0}, {-1, 0, 0}}), {1.0, 1.0});
    ForceField forces;
    forces.per_point = {{0, 1, 0}, {0, -1, 0}};
    forces.total = Eigen::Vector3d::Zero();
    const StepResult step = dynamics_step(system, forces);
    CHECK(step.translation.norm() == 0.0);
    CHECK((step.axis_angle.axis - Eigen::Vector3d::UnitZ()).norm() < 1e-15);
    CHECK(step.axis_angle.angle == doctest::Approx(0.5).epsilon(1e-15)); // |M/J|/2 = 1/2
    CHECK(step.energy == doctest::Approx(1.0).epsilon(1e-15));           // J |alpha|^2 / 2
}

TEST_CASE("uniform per-unit-mass force translates without torque") {
    const PointCloud cloud = testing::make_surface(300, 5);
    std::vector<double> masses(300);
    Rng rng(6);
    for (auto& m : masses) m = rng.next_uniform(0.5, 2.0);
    const ParticleSystem system = build_particle_system(cloud, masses);

    ForceField forces;
    forces.per_point.reserve(300);
    for (int i = 0; i < 300; ++i) {
        forces.per_point.push_back(system.masses[i] * Eigen::Vector3d(1, 0, 0));
        forces.total += forces.per_point.back();
    }
    const StepResult step = dynamics_step(system, forces);
    CHECK((step.translation - Eigen::Vector3d(0.5, 0, 0)).norm() < 1e-12);
    CHECK(step.axis_angle.angle < 1e-9); // torque cancels about the mass center
}

TEST_CASE("inertia-free systems suppress rotation") {
    const ParticleSystem system = build_particle_system(cloud_at({{2, 2, 2}}), {1.0});
    ForceField forces;
    forces.per_point = {{0, 3, 0}};
    forces.total = {0, 3, 0};
    const StepResult step = dynamics_step(system, forces);
    CHECK(step.axis_angle.angle == 0.0);
    CHECK((step.translation - Eigen::Vector3d(0, 1.5, 0)).norm() < 1e-15);
}

TEST_CASE("step limits clamp magnitudes but keep directions") {
    const ParticleSystem system =
        build_particle_system(cloud_at({{1, 0, 0}, {-1, 0, 0}}), {1.0, 1.0});
    ForceField forces;
    forces.per_point = {{0, 100, 0}, {0, -100, 0}};
    forces.total = {4000, 0, 0};

    StepLimits limits;
    limits.max_translation = 0.2;
    limits.max_rotation = 0.05;
    const StepResult step = dynamics_step(system, forces, limits);
    CHECK(step.translation.norm() == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(step.translation.normalized().x() == doctest::Approx(1.0));
    CHECK(step.axis_angle.angle == doctest::Approx(0.05).epsilon(1e-12));
    CHECK((step.axis_angle.axis - Eigen::Vector3d::UnitZ()).norm() < 1e-12);
    // energy reflects the executed (clamped) motion
    const double expected = 0.5 * 2.0 * 0.16 + 0.5 * 2.0 * 0.01;
    CHECK(step.energy == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("energy is zero iff both accelerations vanish") {
    const ParticleSystem system =
        build_particle_system(cloud_at({{1, 0, 0}, {-1, 0, 0}}), {1.0, 1.0});
    ForceField small;
    small.per_point = {{0, 1e-3, 0}, {0, 1e-3, 0}};
    small.total = {0, 2e-3, 0};
    CHECK(dynamics_step(system, small).energy > 0.0);
}

TEST_CASE("step_to_transform basics") {
    StepResult step;
    CHECK((step_to_transform(step, {1, 2, 3}).rotation - Eigen::Matrix3d::Identity())
              .norm() == 0.0);
    CHECK(step_to_transform(step, {1, 2, 3}).translation.norm() == 0.0);

    step.translation = {1, 2, 3};
    const RigidTransform pure = step_to_transform(step, {9, 9, 9});
    CHECK((pure.translation - Eigen::Vector3d(1, 2, 3)).norm() == 0.0);

    StepResult quarter;
    quarter.axis_angle = {Eigen::Vector3d::UnitZ(), M_PI / 2.0};
    const Eigen::Vector3d pivot(1, 0, 0);
    const RigidTransform t = step_to_transform(quarter, pivot);
    CHECK((t(pivot) - pivot).norm() < 1e-15); // the pivot stays fixed
}

TEST_CASE("pivot invariance holds for random steps without translation") {
    Rng rng(8);
    for (int i = 0; i < 20; ++i) {
        StepResult step;
        step.axis_angle.axis = rng.next_unit_vector();
        step.axis_angle.angle = rng.next_uniform() * M_PI;
        const Eigen::Vector3d pivot(rng.next_uniform(-2, 2), rng.next_uniform(-2, 2),
                                    rng.next_uniform(-2, 2));
        const RigidTransform t = step_to_transform(step, pivot);
        CHECK((t(pivot) - pivot).norm() < 1e-12);
    }
}
