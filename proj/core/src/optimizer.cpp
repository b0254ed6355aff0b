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

#include "graphreg/optimizer.hpp"

#include "graphreg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace graphreg {

double lam_rate(int k, int max_iterations) {
    const double progress = static_cast<double>(k) / static_cast<double>(max_iterations);
    if (progress < 0.15) {
        return 0.44 + 0.56 * std::pow(560.0, -static_cast<double>(k) /
                                                 (0.15 * static_cast<double>(max_iterations)));
    }
    if (progress < 0.65) {
        return 0.44;
    }
    return 0.44 * std::pow(440.0, -(progress - 0.65) / 0.35);
}

namespace {

void raise_accept_rate(AnnealState& state) {
    state.accept_rate = (499.0 * state.accept_rate + 1.0) / 500.0;
}

void lower_accept_rate(AnnealState& state) {
    state.accept_rate = 499.0 * state.accept_rate / 500.0;
}

// Metropolis decision shared by both annealers; the random draw is keyed
// on the iteration index, so traces replay exactly.
bool metropolis_rejects(const AnnealState& state, double delta_energy, const Rng& rng) {
    if (delta_energy < 0.0) return false;
    const double p = std::min(1.0, std::exp(-delta_energy / state.temperature));
    return !(rng.uniform_at(static_cast<std::uint64_t>(state.iteration)) < p);
}

} // namespace

bool asa_update(AnnealState& state, double energy, double prev_energy, const Rng& rng) {
    const bool rejected = metropolis_rejects(state, energy - prev_energy, rng);
    if (rejected) {
        lower_accept_rate(state);
    } else {
        raise_accept_rate(state);
    }
    const double target = lam_rate(state.iteration, state.max_iterations);
    state.temperature =
        state.accept_rate > target ? state.beta * state.temperature : state.temperature / state.beta;
    ++state.iteration;
    return rejected;
}

SaOutcome sa_update(AnnealState& state, double energy, double prev_energy, const Rng& rng,
                    double epsilon) {
    SaOutcome outcome;
    outcome.rejected = metropolis_rejects(state, energy - prev_energy, rng);
    if (outcome.rejected) {
        lower_accept_rate(state);
    } else {
        raise_accept_rate(state);
    }
    state.temperature *= state.beta;
    ++state.iteration;
    outcome.converged = state.temperature < epsilon;
    return outcome;
}

OptimizeResult register_clouds(const FeatureCloud& source, const FeatureCloud& target,
                               const RegistrationConfig& config) {
    if (source.cloud.size() == 0 || target.cloud.size() == 0) {
        throw InvalidInputError("register_clouds: empty feature cloud");
    }
    if (!(config.beta > 0.0) || config.beta >= 1.0) {
        throw InvalidInputError("register_clouds: beta must lie in (0, 1)");
    }

    const CorrespondenceSet corr =
        match_features(source.vg, target.vg, config.kernel);

    // joint extent fixes the step bounds for the whole run; a percentile
    // box keeps stray points that survived outlier rejection from
    // inflating the step scale
    std::vector<Eigen::Vector3d> joint = source.cloud.positions;
    joint.insert(joint.end(), target.cloud.positions.begin(), target.cloud.positions.end());
    Eigen::Vector3d lo, hi;
    {
        const std::size_t rank_lo = joint.size() / 50;
        const std::size_t rank_hi = joint.size() - 1 - rank_lo;
        std::vector<double> coord(joint.size());
        for (int axis = 0; axis < 3; ++axis) {
            for (std::size_t i = 0; i < joint.size(); ++i) coord[i] = joint[i][axis];
            std::nth_element(coord.begin(), coord.begin() + rank_lo, coord.end());
            lo[axis] = coord[rank_lo];
            std::nth_element(coord.begin(), coord.begin() + rank_hi, coord.end());
            hi[axis] = coord[rank_hi];
        }
    }
    const double diagonal = (hi - lo).norm();
    StepLimits limits;
    limits.max_translation = config.max_step_translation * diagonal;
    limits.max_rotation = config.max_step_rotation;

    const ParticleSystem initial =
        build_particle_system(source.cloud, source.cloud.intensities);

    AnnealState state;
    state.beta = config.beta;
    state.rng_seed = config.rng_seed;
    const Rng rng(config.rng_seed);

    // plain SA stops on temperature, not the iteration budget
    int budget = config.max_iterations;
    if (config.annealer == Annealer::sa) {
        budget = static_cast<int>(
                     std::ceil(std::log(config.sa_epsilon) / std::log(config.beta))) +
                 1;
    }
    state.max_iterations = budget;

    OptimizeResult result;
    result.trace.beta_outside_recommended = config.beta < 0.7 || config.beta > 0.9;
    result.trace.rows.reserve(budget);

    std::vector<Eigen::Vector3d> moving = source.cloud.positions;
    ParticleSystem system = initial;

    double prev_energy = std::numeric_limits<double>::infinity();
    AxisAngle prev_axis_angle;   // applied (temperature-scaled) values
    Eigen::Vector3d prev_translation = Eigen::Vector3d::Zero();

    for (int k = 0; k < budget; ++k) {
        // the mass center tracks the moving cloud; masses and inertia are
        // rigid invariants of it
        system.positions = moving;
        Eigen::Vector3d weighted = Eigen::Vector3d::Zero();
        for (std::size_t i = 0; i < moving.size(); ++i) {
            weighted += system.masses[i] * moving[i];
        }
        system.mass_center = weighted / system.total_mass;

        const ForceField forces =
            compute_forces(moving, target.cloud.positions, corr);
        const StepResult step = dynamics_step(system, forces, limits);

        bool rejected = false;
        bool converged = false;
        if (config.annealer == Annealer::asa) {
            rejected = asa_update(state, step.energy, prev_energy, rng);
        } else {
            const SaOutcome outcome =
                sa_update(state, step.energy, prev_energy, rng, config.sa_epsilon);
            rejected = outcome.rejected;
            converged = outcome.converged;
        }

        // a rejected proposal re-applies the previous applied step; both
        // branches then scale by the updated temperature
        StepResult applied = step;
        if (rejected) {
            applied.axis_angle = prev_axis_angle;
            applied.translation = prev_translation;
        } else {
            prev_energy = step.energy;
        }
        applied.axis_angle.angle *= state.temperature;
        applied.translation *= state.temperature;

        const RigidTransform increment = step_to_transform(applied, system.mass_center);
        apply_in_place(increment, moving);
        result.transform = compose(increment, result.transform);

        prev_axis_angle = applied.axis_angle;
        prev_translation = applied.translation;

        result.trace.rows.push_back({k, rejected ? prev_energy : step.energy,
                                     state.temperature, state.accept_rate,
                                     lam_rate(k, state.max_iterations), !rejected,
                                     applied.axis_angle.angle,
                                     applied.translation.norm()});

        if (converged) {
            result.trace.converged_early = true;
            break;
        }
        if (config.early_exit && state.temperature < 1e-5 &&
            applied.axis_angle.angle < 1e-12 && applied.translation.norm() < 1e-12) {
            result.trace.converged_early = true;
            break;
        }
    }
    result.final_source_positions = std::move(moving);
    return result;
}

} // namespace graphreg
