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
#include "graphreg/features.hpp"
#include "graphreg/graph.hpp"
#include "graphreg/io.hpp"
#include "graphreg/pipeline.hpp"
#include "graphreg/robust.hpp"
#include "graphreg/synth.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace graphreg;

// command-line overrides land in optionals so file-provided values survive
// when a flag is absent; precedence is defaults < env config < --config < flags
struct ConfigCli {
    std::string config_path;
    std::optional<int> max_iterations;
    std::optional<double> beta;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> annealer;
    std::optional<double> sa_epsilon;
    std::optional<double> resample_rate;
    std::optional<int> knn_k;
    std::optional<double> alpha;
    std::optional<std::string> kernel;
    std::optional<std::string> x84_rule;
    std::optional<double> max_step_translation;
    std::optional<double> max_step_rotation;
    std::optional<bool> center_clouds;
    std::optional<bool> early_exit;
};

void add_config_options(CLI::App* cmd, ConfigCli& cli) {
    cmd->add_option("--config", cli.config_path, "Config file (key = value lines)");
    cmd->add_option("--max-iterations", cli.max_iterations, "Iteration budget");
    cmd->add_option("--beta", cli.beta, "Cool-down rate in (0, 1)");
    cmd->add_option("--seed", cli.seed, "RNG seed");
    cmd->add_option("--annealer", cli.annealer, "asa or sa");
    cmd->add_option("--sa-epsilon", cli.sa_epsilon, "Plain-SA stopping temperature");
    cmd->add_option("--resample-rate", cli.resample_rate, "Resampling fraction in (0, 1]");
    cmd->add_option("--knn-k", cli.knn_k, "Graph neighborhood size");
    cmd->add_option("--alpha", cli.alpha, "X84 rejection scale");
    cmd->add_option("--kernel", cli.kernel, "corrected or literal");
    cmd->add_option("--x84-rule", cli.x84_rule, "median_centered or literal");
    cmd->add_option("--max-step-translation", cli.max_step_translation,
                    "Per-step translation cap (fraction of bbox diagonal)");
    cmd->add_option("--max-step-rotation", cli.max_step_rotation,
                    "Per-step rotation cap (radians)");
    cmd->add_option("--center-clouds", cli.center_clouds, "Centroid pre-alignment");
    cmd->add_option("--early-exit", cli.early_exit, "Stop once steps become negligible");
}

RegistrationConfig resolve_config(const ConfigCli& cli) {
    RegistrationConfig config;
    if (const char* env = std::getenv("GRAPHREG_CONFIG"); env && *env) {
        load_config_file(env, config);
    }
    if (!cli.config_path.empty()) {
        load_config_file(cli.config_path, config);
    }
    if (cli.max_iterations) config.max_iterations = *cli.max_iterations;
    if (cli.beta) config.beta = *cli.beta;
    if (cli.seed) config.rng_seed = *cli.seed;
    if (cli.annealer) {
        if (*cli.annealer == "asa") {
            config.annealer = Annealer::asa;
        } else if (*cli.annealer == "sa") {
            config.annealer = Annealer::sa;
        } else {
            throw InvalidInputError("--annealer must be 'asa' or 'sa'");
        }
    }
    if (cli.sa_epsilon) config.sa_epsilon = *cli.sa_epsilon;
    if (cli.resample_rate) config.resample_rate = *cli.resample_rate;
    if (cli.knn_k) config.knn_k = *cli.knn_k;
    if (cli.alpha) config.alpha = *cli.alpha;
    if (cli.kernel) {
        if (*cli.kernel == "corrected") {
            config.kernel = KernelKind::corrected;
        } else if (*cli.kernel == "literal") {
            config.kernel = KernelKind::literal;
        } else {
            throw InvalidInputError("--kernel must be 'corrected' or 'literal'");
        }
    }
    if (cli.x84_rule) {
        if (*cli.x84_rule == "median_centered") {
            config.x84_rule = X84Rule::median_centered;
        } else if (*cli.x84_rule == "literal") {
            config.x84_rule = X84Rule::literal;
        } else {
            throw InvalidInputError("--x84-rule must be 'median_centered' or 'literal'");
        }
    }
    if (cli.max_step_translation) config.max_step_translation = *cli.max_step_translation;
    if (cli.max_step_rotation) config.max_step_rotation = *cli.max_step_rotation;
    if (cli.center_clouds) config.center_clouds = *cli.center_clouds;
    if (cli.early_exit) config.early_exit = *cli.early_exit;
    return config;
}

CloudFormat format_for(const std::string& path, bool ascii) {
    if (path.size() >= 4) {
        std::string tail = path.substr(path.size() - 4);
        for (auto& ch : tail) ch = static_cast<char>(std::tolower(ch));
        if (tail == ".ply") return ascii ? CloudFormat::ply_ascii : CloudFormat::ply_binary;
    }
    return CloudFormat::xyz;
}

PointCloud select_points(const PointCloud& cloud, const std::vector<int>& indices) {
    PointCloud out;
    out.positions.reserve(indices.size());
    for (int i : indices) out.positions.push_back(cloud.positions[i]);
    return out;
}

void print_transform(const RigidTransform& t) {
    for (int r = 0; r < 3; ++r) {
        std::printf("  %+.10f %+.10f %+.10f   %+.10f\n", t.rotation(r, 0), t.rotation(r, 1),
                    t.rotation(r, 2), t.translation[r]);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Point cloud registration via graph-signal features and rigid dynamics"};
    app.require_subcommand(1);

    ConfigCli cli;

    // register
    auto* cmd_register = app.add_subcommand("register", "Align a source cloud onto a target");
    std::string src_path, tgt_path, gt_path, out_path;
    bool with_icp = false;
    cmd_register->add_option("source", src_path, "Source cloud")->required();
    cmd_register->add_option("target", tgt_path, "Target cloud")->required();
    cmd_register->add_option("--gt", gt_path, "Ground-truth transform file (4x4)");
    cmd_register->add_option("--out", out_path, "Report file");
    cmd_register->add_flag("--icp", with_icp, "Also run the ICP baseline");
    add_config_options(cmd_register, cli);

    // synth
    auto* cmd_synth = app.add_subcommand("synth", "Generate a perturbed pair from a cloud");
    std::string synth_cloud, out_source = "source.ply", out_target = "target.ply",
                out_gt = "gt.txt", out_labels;
    PerturbationSpec spec;
    std::string dist = "gaussian";
    std::uint64_t synth_seed = 0;
    bool ascii = false;
    cmd_synth->add_option("cloud", synth_cloud, "Input cloud")->required();
    cmd_synth->add_option("--angle-max", spec.angle_max_deg, "Max rotation angle (degrees)");
    cmd_synth->add_option("--noise", spec.noise_sigma, "Noise sigma (fraction of extent)");
    cmd_synth->add_option("--outliers", spec.outlier_ratio, "Outlier ratio");
    cmd_synth->add_option("--dist", dist, "Outlier distribution: gaussian or uniform");
    cmd_synth->add_option("--seed", synth_seed, "RNG seed");
    cmd_synth->add_option("--out-source", out_source, "Source output path");
    cmd_synth->add_option("--out-target", out_target, "Target output path");
    cmd_synth->add_option("--out-gt", out_gt, "Ground-truth transform output path");
    cmd_synth->add_option("--out-labels", out_labels, "Outlier index list output path");
    cmd_synth->add_flag("--ascii", ascii, "Write text PLY instead of binary");

    // bench
    auto* cmd_bench = app.add_subcommand("bench", "Run a benchmark case file");
    std::string cases_path, table_path, report_dir;
    bool bench_icp = false;
    cmd_bench->add_option("cases", cases_path, "Cases file")->required();
    cmd_bench->add_option("--out", table_path, "Results table (default: stdout)");
    cmd_bench->add_option("--report-dir", report_dir, "Directory for per-run reports");
    cmd_bench->add_flag("--icp", bench_icp, "Also run the ICP baseline per case");
    add_config_options(cmd_bench, cli);

    // filter
    auto* cmd_filter = app.add_subcommand("filter", "X84 outlier rejection only");
    std::string filter_cloud, filter_out;
    cmd_filter->add_option("cloud", filter_cloud, "Input cloud")->required();
    cmd_filter->add_option("--out", filter_out, "Write the kept points here");
    cmd_filter->add_flag("--ascii", ascii, "Write text PLY instead of binary");
    add_config_options(cmd_filter, cli);

    // resample
    auto* cmd_resample = app.add_subcommand("resample", "Keep the highest-intensity points");
    std::string resample_cloud, resample_out;
    double rate = 0.3;
    cmd_resample->add_option("cloud", resample_cloud, "Input cloud")->required();
    cmd_resample->add_option("--rate", rate, "Fraction kept, (0, 1]")->required();
    cmd_resample->add_option("--out", resample_out, "Output cloud path");
    cmd_resample->add_flag("--ascii", ascii, "Write text PLY instead of binary");
    add_config_options(cmd_resample, cli);

    // invariants
    auto* cmd_invariants =
        app.add_subcommand("invariants", "Dump response intensity and V_g per point");
    std::string inv_cloud, inv_out;
    cmd_invariants->add_option("cloud", inv_cloud, "Input cloud")->required();
    cmd_invariants->add_option("--out", inv_out, "Output file (default: stdout)");
    add_config_options(cmd_invariants, cli);

    // voxel
    auto* cmd_voxel = app.add_subcommand("voxel", "Voxel-grid thinning");
    std::string voxel_cloud, voxel_out;
    double grid_step = 0.1;
    cmd_voxel->add_option("cloud", voxel_cloud, "Input cloud")->required();
    cmd_voxel->add_option("--step", grid_step, "Grid step")->required();
    cmd_voxel->add_option("--out", voxel_out, "Output cloud path")->required();
    cmd_voxel->add_flag("--ascii", ascii, "Write text PLY instead of binary");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_register) {
            const RegistrationConfig config = resolve_config(cli);
            const PointCloud source = read_cloud(src_path);
            const PointCloud target = read_cloud(tgt_path);
            std::optional<RigidTransform> gt;
            if (!gt_path.empty()) gt = read_transform(gt_path);

            const RegistrationReport report = run(source, target, config, gt);
            std::printf("registered %zu -> %zu points in %d iterations (%.3f s)\n",
                        source.size(), target.size(), report.iterations,
                        report.runtime_seconds);
            print_transform(report.transform);
            if (report.ang_err_deg) std::printf("ang_err_deg %.6f\n", *report.ang_err_deg);
            if (report.rmsd_value) std::printf("rmsd %.9g\n", *report.rmsd_value);
            if (!out_path.empty()) write_report(report, out_path);

            if (with_icp) {
                const RegistrationReport icp = icp_baseline(source, target, config, gt);
                std::printf("icp baseline: %d iterations (%.3f s)\n", icp.iterations,
                            icp.runtime_seconds);
                if (icp.ang_err_deg) std::printf("icp ang_err_deg %.6f\n", *icp.ang_err_deg);
            }
        } else if (*cmd_synth) {
            if (dist == "gaussian") {
                spec.outlier_kind = OutlierKind::gaussian;
            } else if (dist == "uniform") {
                spec.outlier_kind = OutlierKind::uniform;
            } else {
                throw InvalidInputError("--dist must be 'gaussian' or 'uniform'");
            }
            const PointCloud cloud = read_cloud(synth_cloud);
            const SynthPair pair = synthesize_pair(cloud, spec, synth_seed);
            write_cloud(pair.source, out_source, format_for(out_source, ascii));
            write_cloud(pair.target, out_target, format_for(out_target, ascii));
            write_transform(pair.ground_truth, out_gt);
            if (!out_labels.empty()) {
                std::ofstream labels(out_labels);
                if (!labels) throw IoError("cannot open '" + out_labels + "' for writing");
                for (int idx : pair.outlier_indices) labels << idx << "\n";
            }
            std::printf("synthesized pair: %zu source (%zu outliers), %zu target\n",
                        pair.source.size(), pair.outlier_indices.size(), pair.target.size());
        } else if (*cmd_bench) {
            const RegistrationConfig config = resolve_config(cli);
            const auto cases = parse_cases(cases_path);
            BenchOptions options;
            options.run_icp = bench_icp;
            options.report_dir = report_dir;
            int code = 0;
            if (table_path.empty()) {
                code = run_bench(cases, config, options, std::cout);
            } else {
                std::ofstream table(table_path);
                if (!table) throw IoError("cannot open '" + table_path + "' for writing");
                code = run_bench(cases, config, options, table);
            }
            return code;
        } else if (*cmd_filter) {
            const RegistrationConfig config = resolve_config(cli);
            const PointCloud cloud = read_cloud(filter_cloud);
            const NeighborGraph graph = build_graph(cloud, config.knn_k);
            const std::vector<double> intensity = response_intensity(cloud, graph);
            const OutlierReport report =
                x84_filter(cloud, intensity, config.alpha, config.x84_rule);
            std::printf("kept %zu removed %zu median %.9g mad %.9g threshold %.9g%s\n",
                        report.kept_indices.size(), report.removed_indices.size(),
                        report.median_intensity, report.mad, report.threshold,
                        report.degenerate ? " (degenerate)" : "");
            if (!filter_out.empty()) {
                write_cloud(select_points(cloud, report.kept_indices), filter_out,
                            format_for(filter_out, ascii));
            }
        } else if (*cmd_resample) {
            const RegistrationConfig config = resolve_config(cli);
            const PointCloud cloud = read_cloud(resample_cloud);
            const NeighborGraph graph = build_graph(cloud, config.knn_k);
            const std::vector<double> intensity = response_intensity(cloud, graph);
            const ResampleResult result = resample(cloud, intensity, rate);
            std::printf("kept %zu of %zu points\n", result.cloud.size(), cloud.size());
            if (!resample_out.empty()) {
                write_cloud(result.cloud, resample_out, format_for(resample_out, ascii));
            }
        } else if (*cmd_invariants) {
            const RegistrationConfig config = resolve_config(cli);
            const PointCloud cloud = read_cloud(inv_cloud);
            const NeighborGraph graph = build_graph(cloud, config.knn_k);
            PointCloud enriched = cloud;
            enriched.intensities = response_intensity(cloud, graph);
            enriched = estimate_normals_curvatures(enriched, config.knn_k);
            const std::vector<double> vg = geometric_invariant(enriched, graph);

            std::ostream* out = &std::cout;
            std::ofstream file;
            if (!inv_out.empty()) {
                file.open(inv_out);
                if (!file) throw IoError("cannot open '" + inv_out + "' for writing");
                out = &file;
            }
            (*out) << "# index intensity vg\n";
            char buf[80];
            for (std::size_t i = 0; i < cloud.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%zu %.17g %.17g\n", i,
                              enriched.intensities[i], vg[i]);
                (*out) << buf;
            }
        } else if (*cmd_voxel) {
            const PointCloud cloud = read_cloud(voxel_cloud);
            const PointCloud thinned = voxel_downsample(cloud, grid_step);
            std::printf("thinned %zu -> %zu points\n", cloud.size(), thinned.size());
            write_cloud(thinned, voxel_out, format_for(voxel_out, ascii));
        }
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
