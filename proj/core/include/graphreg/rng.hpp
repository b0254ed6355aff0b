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

#include <Eigen/Core>

#include <cmath>
#include <cstdint>

namespace graphreg {

/// Counter-based uniform generator. Every draw is a pure function of
/// (seed, counter), so sequences are replayable and independent draws can
/// be addressed directly (the annealers key their single per-iteration
/// draw on the iteration index).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {}

    /// Value in [0, 1) at an explicit counter position.
    double uniform_at(std::uint64_t counter) const {
        return to_unit(mix(seed_ + 0x9e3779b97f4a7c15ULL * (counter + 1)));
    }

    /// Streaming draws.
    double next_uniform() { return uniform_at(counter_++); }

    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_uniform();
    }

    /// Standard normal via Box-Muller.
    double next_normal() {
        const double u1 = std::max(next_uniform(), 1e-300);
        const double u2 = next_uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Uniformly distributed unit vector.
    Eigen::Vector3d next_unit_vector() {
        const double z = 1.0 - 2.0 * next_uniform();
        const double phi = 2.0 * M_PI * next_uniform();
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

    std::uint64_t seed() const { return seed_; }

private:
    static std::uint64_t mix(std::uint64_t x) {
        // splitmix64 finalizer
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return x;
    }

    static double to_unit(std::uint64_t x) {
        return static_cast<double>(x >> 11) * 0x1.0p-53;
    }

    std::uint64_t seed_ = 0;
    std::uint64_t counter_ = 0;
};

} // namespace graphreg
