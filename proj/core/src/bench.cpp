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

#include "graphreg/bench.hpp"

#include "graphreg/errors.hpp"
#include "graphreg/io.hpp"
#include "graphreg/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace graphreg {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

// splits "key = value" (or "key value"); empty key on failure
std::pair<std::string, std::string> split_kv(const std::string& line) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) {
        return {trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
    }
    const auto ws = line.find_first_of(" \t");
    if (ws == std::string::npos) return {trim(line), ""};
    return {trim(line.substr(0, ws)), trim(line.substr(ws + 1))};
}

double parse_double(const std::string& value, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParseError(context + ": expected a number, got '" + value + "'");
    }
}

long parse_long(const std::string& value, const std::string& context) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParseError(context + ": expected an integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& value, const std::string& context) {
    if (value == "1" || value == "true" || value == "on") return true;
    if (value == "0" || value == "false" || value == "off") return false;
    throw ParseError(context + ": expected a boolean, got '" + value + "'");
}

} // namespace

void load_config_file(const std::string& path, RegistrationConfig& config) {
    std::ifstream in(path);
    if (!in) throw IoError("load_config_file: cannot open '" + path + "'");

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        const auto [key, value] = split_kv(text);
        const std::string ctx = path + ":" + std::to_string(line_no);
        if (key == "max_iterations") {
            config.max_iterations = static_cast<int>(parse_long(value, ctx));
        } else if (key == "beta") {
            config.beta = parse_double(value, ctx);
        } else if (key == "rng_seed") {
            config.rng_seed = static_cast<std::uint64_t>(parse_long(value, ctx));
        } else if (key == "annealer") {
            if (value == "asa") {
                config.annealer = Annealer::asa;
            } else if (value == "sa") {
                config.annealer = Annealer::sa;
            } else {
                throw ParseError(ctx + ": annealer must be 'asa' or 'sa'");
            }
        } else if (key == "sa_epsilon") {
            config.sa_epsilon = parse_double(value, ctx);
        } else if (key == "resample_rate") {
            config.resample_rate = parse_double(value, ctx);
        } else if (key == "knn_k") {
            config.knn_k = static_cast<int>(parse_long(value, ctx));
        } else if (key == "alpha") {
            config.alpha = parse_double(value, ctx);
        } else if (key == "kernel") {
            if (value == "corrected") {
                config.kernel = KernelKind::corrected;
            } else if (value == "literal") {
                config.kernel = KernelKind::literal;
            } else {
                throw ParseError(ctx + ": kernel must be 'corrected' or 'literal'");
            }
        } else if (key == "x84_rule") {
            if (value == "median_centered") {
                config.x84_rule = X84Rule::median_centered;
            } else if (value == "literal") {
                config.x84_rule = X84Rule::literal;
            } else {
                throw ParseError(ctx + ": x84_rule must be 'median_centered' or 'literal'");
            }
        } else if (key == "max_step_translation") {
            config.max_step_translation = parse_double(value, ctx);
        } else if (key == "max_step_rotation") {
            config.max_step_rotation = parse_double(value, ctx);
        } else if (key == "center_clouds") {
            config.center_clouds = parse_bool(value, ctx);
        } else if (key == "early_exit") {
            config.early_exit = parse_bool(value, ctx);
        } else {
            throw ParseError(ctx + ": unknown config key '" + key + "'");
        }
    }
}

std::vector<BenchmarkCase> parse_cases(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("parse_cases: cannot open '" + path + "'");

    std::vector<BenchmarkCase> cases;
    BenchmarkCase current;
    bool open = false;
    PerturbationSpec spec;
    bool spec_touched = false;

    auto flush = [&]() {
        if (!open) return;
        if (current.name.empty()) {
            throw ParseError(path + ": case without a name");
        }
        const bool pair_mode = !current.source_path.empty() || !current.target_path.empty();
        const bool synth_mode = !current.cloud_path.empty();
        if (pair_mode == synth_mode) {
            throw ParseError(path + ": case '" + current.name +
                             "' must set either source/target or cloud");
        }
        if (pair_mode && (current.source_path.empty() || current.target_path.empty())) {
            throw ParseError(path + ": case '" + current.name +
                             "' needs both source and target");
        }
        if (synth_mode) {
            current.perturbation = spec;
        } else if (spec_touched) {
            throw ParseError(path + ": case '" + current.name +
                             "' mixes an explicit pair with perturbation settings");
        }
        cases.push_back(current);
        current = {};
        spec = {};
        spec_touched = false;
    };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        const std::string ctx = path + ":" + std::to_string(line_no);
        if (text == "[case]") {
            flush();
            open = true;
            continue;
        }
        if (!open) throw ParseError(ctx + ": content before the first [case]");
        const auto [key, value] = split_kv(text);
        if (key == "name") {
            current.name = value;
        } else if (key == "source") {
            current.source_path = value;
        } else if (key == "target") {
            current.target_path = value;
        } else if (key == "gt") {
            current.ground_truth_path = value;
        } else if (key == "cloud") {
            current.cloud_path = value;
        } else if (key == "angle_max_deg") {
            spec.angle_max_deg = parse_double(value, ctx);
            spec_touched = true;
        } else if (key == "noise") {
            spec.noise_sigma = parse_double(value, ctx);
            spec_touched = true;
        } else if (key == "outlier_ratio") {
            spec.outlier_ratio = parse_double(value, ctx);
            spec_touched = true;
        } else if (key == "outlier_dist") {
            if (value == "gaussian") {
                spec.outlier_kind = OutlierKind::gaussian;
            } else if (value == "uniform") {
                spec.outlier_kind = OutlierKind::uniform;
            } else {
                throw ParseError(ctx + ": outlier_dist must be 'gaussian' or 'uniform'");
            }
            spec_touched = true;
        } else if (key == "seed") {
            current.seed = static_cast<std::uint64_t>(parse_long(value, ctx));
        } else if (key == "repeats") {
            current.repeats = static_cast<int>(parse_long(value, ctx));
            if (current.repeats < 1) throw ParseError(ctx + ": repeats must be >= 1");
        } else {
            throw ParseError(ctx + ": unknown case key '" + key + "'");
        }
    }
    flush();
    return cases;
}

namespace {

std::string mean4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

} // namespace

int run_bench(const std::vector<BenchmarkCase>& cases, const RegistrationConfig& config,
              const BenchOptions& options, std::ostream& table) {
    table << "# name method status ang_err_deg rmsd iterations runtime_s\n";
    bool any_failed = false;

    for (const auto& entry : cases) {
        double sum_ang_gr = 0.0, sum_ang_icp = 0.0;
        int ok_gr = 0, ok_icp = 0;

        for (int rep = 0; rep < entry.repeats; ++rep) {
            const std::string run_name =
                entry.repeats > 1 ? entry.name + "/" + std::to_string(rep) : entry.name;
            try {
                PointCloud source, target;
                std::optional<RigidTransform> gt;
                std::uint64_t seed = entry.seed + static_cast<std::uint64_t>(rep);
                if (entry.perturbation) {
                    const PointCloud base = read_cloud(entry.cloud_path);
                    SynthPair pair = synthesize_pair(base, *entry.perturbation, seed);
                    source = std::move(pair.source);
                    target = std::move(pair.target);
                    gt = pair.ground_truth;
                } else {
                    source = read_cloud(entry.source_path);
                    target = read_cloud(entry.target_path);
                    if (!entry.ground_truth_path.empty()) {
                        gt = read_transform(entry.ground_truth_path);
                    }
                }

                RegistrationConfig run_config = config;
                run_config.rng_seed = seed;

                const RegistrationReport report = run(source, target, run_config, gt);
                table << summary_row(run_name, "graphreg", report) << "\n";
                if (report.ang_err_deg) {
                    sum_ang_gr += *report.ang_err_deg;
                    ++ok_gr;
                }
                if (!options.report_dir.empty()) {
                    write_report(report, options.report_dir + "/" + entry.name + "_" +
                                             std::to_string(rep) + ".graphreg.txt");
                }

                if (options.run_icp) {
                    const RegistrationReport icp = icp_baseline(source, target, run_config, gt);
                    table << summary_row(run_name, "icp", icp) << "\n";
                    if (icp.ang_err_deg) {
                        sum_ang_icp += *icp.ang_err_deg;
                        ++ok_icp;
                    }
                    if (!options.report_dir.empty()) {
                        write_report(icp, options.report_dir + "/" + entry.name + "_" +
                                              std::to_string(rep) + ".icp.txt");
                    }
                }
            } catch (const std::exception& e) {
                any_failed = true;
                table << run_name << " graphreg failed - - 0 0  # " << e.what() << "\n";
            }
        }

        if (entry.repeats > 1 && ok_gr > 0) {
            table << entry.name << " graphreg mean " << mean4(sum_ang_gr / ok_gr)
                  << " - " << ok_gr << " -\n";
        }
        if (entry.repeats > 1 && ok_icp > 0) {
            table << entry.name << " icp mean " << mean4(sum_ang_icp / ok_icp) << " - "
                  << ok_icp << " -\n";
        }
    }
    return any_failed ? 3 : 0;
}

} // namespace graphreg
