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

#include "graphreg/optimizer.hpp"
#include "graphreg/synth.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace graphreg {

/// One benchmark entry: either an explicit source/target pair (with an
/// optional ground-truth transform file) or a cloud plus a perturbation
/// recipe that synthesizes the pair. The two modes are mutually exclusive.
struct BenchmarkCase {
    std::string name;
    std::string source_path;
    std::string target_path;
    std::string ground_truth_path;
    std::string cloud_path; // synthesis mode
    std::optional<PerturbationSpec> perturbation;
    std::uint64_t seed = 0;
    int repeats = 1;
};

/// Parses a cases file: one `[case]` section per entry with `key = value`
/// lines. Malformed content raises ParseError.
std::vector<BenchmarkCase> parse_cases(const std::string& path);

struct BenchOptions {
    bool run_icp = false;
    std::string report_dir; // when set, per-run report files land here
};

/// Runs every case (GraphReg, plus optionally ICP), writing one summary
/// row per run and an aggregate mean row per case with repeats. Per-case
/// failures are recorded in the table and the run continues. Returns 0 on
/// full success, 3 when some cases failed.
int run_bench(const std::vector<BenchmarkCase>& cases, const RegistrationConfig& config,
              const BenchOptions& options, std::ostream& table);

/// Key/value config file mirroring RegistrationConfig; unknown keys raise
/// ParseError.
void load_config_file(const std::string& path, RegistrationConfig& config);

} // namespace graphreg
