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

#include "graphreg/dynamics.hpp"
#include "graphreg/features.hpp"
#include "graphreg/geometry.hpp"
#include "graphreg/rng.hpp"
#include "graphreg/robust.hpp"

#include <cstdint>
#include <vector>

namespace graphreg {

enum class Annealer { asa, sa };

/// Full tuning surface of a registration run.
struct RegistrationConfig {
    int max_iterations = 100;
    double beta = 0.90; // cool-down rate; recommended basin is [0.7, 0.9]
    std::uint64_t rng_seed = 0;
    Annealer annealer = Annealer::asa;
    double sa_epsilon = 1e-5; // plain-SA stopping temperature

    double resample_rate = 0.3; // fraction of points kept, (0, 1]
    int knn_k = 10;
    double alpha = 5.2; // X84 rejection scale
    KernelKind kernel = KernelKind::corrected;
    X84Rule x84_rule = X84Rule::median_centered;

    // per-step motion bounds before temperature scaling
    double max_step_translation = 0.02; // fraction of the joint extent
    double max_step_rotation = 0.10;    // radians

    bool center_clouds = false; // optional centroid pre-alignment
    bool early_exit = false;    // stop once T < 1e-5 and the step is negligible
};

/// Annealing state shared by ASA and plain SA.
struct AnnealState {
    double temperature = 1.0;
    double accept_rate = 0.5;
    double beta = 0.90;
    int iteration = 0;
    int max_iterations = 100;
    std::uint64_t rng_seed = 0;
};

/// Lam-style target acceptance schedule: 1.0 at k = 0, a 0.44 plateau over
/// the middle of the run, decaying to 0.001 at k = max.
double lam_rate(int k, int max_iterations);

/// One adaptive-annealing update. Accepts when the energy dropped, else
/// with probability exp(-dE/T); the acceptance-rate tracker feeds back
/// against lam_rate to steer the temperature. Advances state.iteration.
/// Returns true when the proposal was rejected.
bool asa_update(AnnealState& state, double energy, double prev_energy, const Rng& rng);

struct SaOutcome {
    bool rejected = false;
    bool converged = false;
};

/// Plain simulated annealing: Metropolis accept/reject with fixed
/// multiplicative cooling; converged once T < epsilon.
SaOutcome sa_update(AnnealState& state, double energy, double prev_energy, const Rng& rng,
                    double epsilon = 1e-5);

struct TraceRow {
    int iteration = 0;
    double energy = 0.0;
    double temperature = 0.0;
    double accept_rate = 0.0;
    double lam_rate = 0.0;
    bool accepted = true;
    double theta = 0.0;            // applied rotation angle (post scaling)
    double translation_norm = 0.0; // applied |t| (post scaling)
};

struct IterationTrace {
    std::vector<TraceRow> rows;
    bool beta_outside_recommended = false;
    bool converged_early = false;
};

struct OptimizeResult {
    RigidTransform transform;
    IterationTrace trace;
    /// Source positions after the last applied increment; the composite
    /// transform reproduces these from the inputs.
    std::vector<Eigen::Vector3d> final_source_positions;
};

/// Iterative dynamical alignment of two preprocessed clouds. Features are
/// matched once (they are pose-invariant); forces, the dynamics step, the
/// annealing update and the temperature-scaled incremental transform run
/// every iteration, and the result is the composite of all increments.
OptimizeResult register_clouds(const FeatureCloud& source, const FeatureCloud& target,
                               const RegistrationConfig& config);

} // namespace graphreg
