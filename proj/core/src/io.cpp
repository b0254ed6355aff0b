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

#include "graphreg/io.hpp"

#include "graphreg/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace graphreg {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool ends_with_ply(const std::string& path) {
    if (path.size() < 4) return false;
    std::string tail = path.substr(path.size() - 4);
    std::transform(tail.begin(), tail.end(), tail.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return tail == ".ply";
}

struct PlyProperty {
    std::string name;
    int byte_size = 0;    // 0 marks a list property
    bool is_float = false;
    bool is_signed = false;
    int count_size = 0;   // list count width
    int item_size = 0;    // list item width
};

struct PlyElement {
    std::string name;
    long count = 0;
    std::vector<PlyProperty> properties;
};

int scalar_size(const std::string& type) {
    if (type == "char" || type == "int8" || type == "uchar" || type == "uint8") return 1;
    if (type == "short" || type == "int16" || type == "ushort" || type == "uint16") return 2;
    if (type == "int" || type == "int32" || type == "uint" || type == "uint32") return 4;
    if (type == "float" || type == "float32") return 4;
    if (type == "double" || type == "float64") return 8;
    return -1;
}

bool scalar_is_float(const std::string& type) {
    return type == "float" || type == "float32" || type == "double" || type == "float64";
}

bool scalar_is_signed(const std::string& type) {
    return type == "char" || type == "int8" || type == "short" || type == "int16" ||
           type == "int" || type == "int32" || type == "double" || type == "float64" ||
           type == "float" || type == "float32";
}

double decode_scalar(const unsigned char* bytes, const PlyProperty& prop) {
    if (prop.is_float) {
        if (prop.byte_size == 4) {
            float f;
            std::memcpy(&f, bytes, 4);
            return f;
        }
        double d;
        std::memcpy(&d, bytes, 8);
        return d;
    }
    std::uint64_t raw = 0;
    std::memcpy(&raw, bytes, prop.byte_size);
    if (prop.is_signed) {
        // sign-extend
        const int shift = 64 - 8 * prop.byte_size;
        return static_cast<double>(static_cast<std::int64_t>(raw << shift) >> shift);
    }
    return static_cast<double>(raw);
}

long read_list_count(std::istream& in, int width) {
    unsigned char buf[8] = {};
    in.read(reinterpret_cast<char*>(buf), width);
    std::uint64_t raw = 0;
    std::memcpy(&raw, buf, width);
    return static_cast<long>(raw);
}

PointCloud read_ply(std::ifstream& in, const std::string& path) {
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++line_no;
        return true;
    };
    auto fail = [&](const std::string& msg) -> void {
        throw ParseError(path + ":" + std::to_string(line_no) + ": " + msg);
    };

    if (!next_line() || line != "ply") fail("missing 'ply' magic");

    bool binary = false;
    std::vector<PlyElement> elements;
    bool header_done = false;
    while (next_line()) {
        std::istringstream ls(line);
        std::string keyword;
        ls >> keyword;
        if (keyword == "comment" || keyword == "obj_info" || keyword.empty()) continue;
        if (keyword == "format") {
            std::string fmt, version;
            ls >> fmt >> version;
            if (fmt == "ascii") {
                binary = false;
            } else if (fmt == "binary_little_endian") {
                binary = true;
            } else {
                fail("unsupported format '" + fmt + "'");
            }
        } else if (keyword == "element") {
            PlyElement el;
            if (!(ls >> el.name >> el.count) || el.count < 0) fail("malformed element line");
            elements.push_back(el);
        } else if (keyword == "property") {
            if (elements.empty()) fail("property before any element");
            std::string type;
            ls >> type;
            PlyProperty prop;
            if (type == "list") {
                std::string count_type, item_type;
                ls >> count_type >> item_type >> prop.name;
                prop.count_size = scalar_size(count_type);
                prop.item_size = scalar_size(item_type);
                if (prop.count_size <= 0 || prop.item_size <= 0 || prop.name.empty()) {
                    fail("malformed list property");
                }
            } else {
                prop.byte_size = scalar_size(type);
                prop.is_float = scalar_is_float(type);
                prop.is_signed = scalar_is_signed(type);
                ls >> prop.name;
                if (prop.byte_size <= 0 || prop.name.empty()) {
                    fail("unknown property type '" + type + "'");
                }
            }
            elements.back().properties.push_back(prop);
        } else if (keyword == "end_header") {
            header_done = true;
            break;
        } else {
            fail("unexpected header keyword '" + keyword + "'");
        }
    }
    if (!header_done) fail("unterminated header");

    const auto vertex_it =
        std::find_if(elements.begin(), elements.end(),
                     [](const PlyElement& el) { return el.name == "vertex"; });
    if (vertex_it == elements.end()) fail("no vertex element declared");

    int idx_x = -1, idx_y = -1, idx_z = -1, idx_nx = -1, idx_ny = -1, idx_nz = -1;
    for (std::size_t p = 0; p < vertex_it->properties.size(); ++p) {
        const auto& prop = vertex_it->properties[p];
        if (prop.byte_size == 0) {
            fail("list property '" + prop.name + "' in vertex element is unsupported");
        }
        if (prop.name == "x") idx_x = static_cast<int>(p);
        if (prop.name == "y") idx_y = static_cast<int>(p);
        if (prop.name == "z") idx_z = static_cast<int>(p);
        if (prop.name == "nx") idx_nx = static_cast<int>(p);
        if (prop.name == "ny") idx_ny = static_cast<int>(p);
        if (prop.name == "nz") idx_nz = static_cast<int>(p);
    }
    if (idx_x < 0 || idx_y < 0 || idx_z < 0) fail("vertex element lacks x/y/z");
    const bool with_normals = idx_nx >= 0 && idx_ny >= 0 && idx_nz >= 0;

    PointCloud cloud;
    cloud.positions.reserve(vertex_it->count);
    if (with_normals) cloud.normals.reserve(vertex_it->count);

    for (const auto& element : elements) {
        const bool is_vertex = &element == &*vertex_it;
        if (binary) {
            for (long row = 0; row < element.count; ++row) {
                std::vector<double> values(element.properties.size(), 0.0);
                for (std::size_t p = 0; p < element.properties.size(); ++p) {
                    const auto& prop = element.properties[p];
                    if (prop.byte_size == 0) {
                        const long count = read_list_count(in, prop.count_size);
                        in.seekg(count * prop.item_size, std::ios::cur);
                    } else {
                        unsigned char buf[8];
                        in.read(reinterpret_cast<char*>(buf), prop.byte_size);
                        values[p] = decode_scalar(buf, prop);
                    }
                    if (!in) {
                        throw ParseError(path + ": byte " + std::to_string(in.tellg()) +
                                         ": element '" + element.name + "' declares " +
                                         std::to_string(element.count) +
                                         " rows but data ends at row " + std::to_string(row));
                    }
                }
                if (is_vertex) {
                    cloud.positions.emplace_back(values[idx_x], values[idx_y], values[idx_z]);
                    if (with_normals) {
                        cloud.normals.emplace_back(values[idx_nx], values[idx_ny],
                                                   values[idx_nz]);
                    }
                }
            }
        } else {
            for (long row = 0; row < element.count; ++row) {
                if (!next_line()) {
                    throw ParseError(path + ":" + std::to_string(line_no) + ": element '" +
                                     element.name + "' declares " +
                                     std::to_string(element.count) +
                                     " rows but the file ends after " + std::to_string(row));
                }
                if (!is_vertex) continue;
                std::istringstream ls(line);
                std::vector<double> values(element.properties.size(), 0.0);
                for (std::size_t p = 0; p < element.properties.size(); ++p) {
                    if (element.properties[p].byte_size == 0) break;
                    if (!(ls >> values[p])) {
                        fail("malformed vertex record (property '" +
                             element.properties[p].name + "')");
                    }
                }
                cloud.positions.emplace_back(values[idx_x], values[idx_y], values[idx_z]);
                if (with_normals) {
                    cloud.normals.emplace_back(values[idx_nx], values[idx_ny], values[idx_nz]);
                }
            }
        }
        if (is_vertex) break; // later elements are not needed
    }

    if (with_normals) {
        for (std::size_t i = 0; i < cloud.normals.size(); ++i) {
            const double norm = cloud.normals[i].norm();
            if (norm <= 0.0) {
                throw ParseError(path + ": vertex " + std::to_string(i) +
                                 " carries a zero-length normal");
            }
            cloud.normals[i] /= norm;
        }
    }
    return cloud;
}

PointCloud read_xyz(std::ifstream& in, const std::string& path) {
    PointCloud cloud;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream ls(line);
        double x, y, z;
        if (!(ls >> x >> y >> z)) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected at least three numbers");
        }
        cloud.positions.emplace_back(x, y, z);
    }
    return cloud;
}

} // namespace

PointCloud read_cloud(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_cloud: cannot open '" + path + "'");
    if (ends_with_ply(path)) return read_ply(in, path);
    return read_xyz(in, path);
}

void write_cloud(const PointCloud& cloud, const std::string& path, CloudFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_cloud: cannot open '" + path + "' for writing");

    const bool with_normals = cloud.has_normals();
    if (format == CloudFormat::xyz) {
        for (const auto& p : cloud.positions) {
            out << fmt17(p.x()) << ' ' << fmt17(p.y()) << ' ' << fmt17(p.z()) << '\n';
        }
        return;
    }

    out << "ply\n";
    out << (format == CloudFormat::ply_binary ? "format binary_little_endian 1.0\n"
                                              : "format ascii 1.0\n");
    out << "element vertex " << cloud.size() << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    if (with_normals) {
        out << "property double nx\nproperty double ny\nproperty double nz\n";
    }
    out << "end_header\n";

    if (format == CloudFormat::ply_binary) {
        auto put = [&out](double v) {
            out.write(reinterpret_cast<const char*>(&v), sizeof(v));
        };
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            put(cloud.positions[i].x());
            put(cloud.positions[i].y());
            put(cloud.positions[i].z());
            if (with_normals) {
                put(cloud.normals[i].x());
                put(cloud.normals[i].y());
                put(cloud.normals[i].z());
            }
        }
    } else {
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            out << fmt17(cloud.positions[i].x()) << ' ' << fmt17(cloud.positions[i].y())
                << ' ' << fmt17(cloud.positions[i].z());
            if (with_normals) {
                out << ' ' << fmt17(cloud.normals[i].x()) << ' '
                    << fmt17(cloud.normals[i].y()) << ' ' << fmt17(cloud.normals[i].z());
            }
            out << '\n';
        }
    }
    if (!out) throw IoError("write_cloud: failed writing '" + path + "'");
}

RigidTransform read_transform(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_transform: cannot open '" + path + "'");
    double m[16];
    for (int i = 0; i < 16; ++i) {
        if (!(in >> m[i])) {
            throw ParseError(path + ": expected 16 numbers, got " + std::to_string(i));
        }
    }
    RigidTransform t;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) t.rotation(r, c) = m[4 * r + c];
        t.translation[r] = m[4 * r + 3];
    }
    if (!is_rotation(t.rotation, 1e-6)) {
        throw ParseError(path + ": upper-left 3x3 block is not a rotation matrix");
    }
    return t;
}

void write_transform(const RigidTransform& transform, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("write_transform: cannot open '" + path + "' for writing");
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            double v;
            if (r < 3) {
                v = c < 3 ? transform.rotation(r, c) : transform.translation[r];
            } else {
                v = c < 3 ? 0.0 : 1.0;
            }
            out << fmt17(v) << (c == 3 ? '\n' : ' ');
        }
    }
}

namespace {

const char* annealer_name(Annealer a) { return a == Annealer::asa ? "asa" : "sa"; }
const char* kernel_name(KernelKind k) {
    return k == KernelKind::corrected ? "corrected" : "literal";
}
const char* rule_name(X84Rule r) {
    return r == X84Rule::median_centered ? "median_centered" : "literal";
}

} // namespace

void write_report(const RegistrationReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("write_report: cannot open '" + path + "' for writing");

    out << "graphreg report v1\n";
    out << "transform\n";
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            double v;
            if (r < 3) {
                v = c < 3 ? report.transform.rotation(r, c) : report.transform.translation[r];
            } else {
                v = c < 3 ? 0.0 : 1.0;
            }
            out << fmt17(v) << (c == 3 ? '\n' : ' ');
        }
    }
    out << "metrics\n";
    out << "iterations " << report.iterations << "\n";
    out << "outliers_removed " << report.outliers_removed[0] << ' '
        << report.outliers_removed[1] << "\n";
    out << "resampled_sizes " << report.resampled_sizes[0] << ' '
        << report.resampled_sizes[1] << "\n";
    if (report.ang_err_deg) out << "ang_err_deg " << fmt17(*report.ang_err_deg) << "\n";
    if (report.rmsd_value) out << "rmsd " << fmt17(*report.rmsd_value) << "\n";
    out << "runtime_seconds " << fmt17(report.runtime_seconds) << "\n";

    const RegistrationConfig& c = report.config;
    out << "config\n";
    out << "max_iterations " << c.max_iterations << "\n";
    out << "beta " << fmt17(c.beta) << "\n";
    out << "rng_seed " << c.rng_seed << "\n";
    out << "annealer " << annealer_name(c.annealer) << "\n";
    out << "sa_epsilon " << fmt17(c.sa_epsilon) << "\n";
    out << "resample_rate " << fmt17(c.resample_rate) << "\n";
    out << "knn_k " << c.knn_k << "\n";
    out << "alpha " << fmt17(c.alpha) << "\n";
    out << "kernel " << kernel_name(c.kernel) << "\n";
    out << "x84_rule " << rule_name(c.x84_rule) << "\n";
    out << "max_step_translation " << fmt17(c.max_step_translation) << "\n";
    out << "max_step_rotation " << fmt17(c.max_step_rotation) << "\n";
    out << "center_clouds " << (c.center_clouds ? 1 : 0) << "\n";
    out << "early_exit " << (c.early_exit ? 1 : 0) << "\n";

    out << "trace " << report.trace.rows.size() << "\n";
    out << "# k energy temperature accept_rate lam_rate accepted theta t_norm\n";
    for (const auto& row : report.trace.rows) {
        out << row.iteration << ' ' << fmt17(row.energy) << ' ' << fmt17(row.temperature)
            << ' ' << fmt17(row.accept_rate) << ' ' << fmt17(row.lam_rate) << ' '
            << (row.accepted ? 1 : 0) << ' ' << fmt17(row.theta) << ' '
            << fmt17(row.translation_norm) << "\n";
    }
    if (!out) throw IoError("write_report: failed writing '" + path + "'");
}

std::string summary_row(const std::string& name, const std::string& method,
                        const RegistrationReport& report, const std::string& status) {
    std::ostringstream row;
    row << name << ' ' << method << ' ' << status << ' ';
    if (report.ang_err_deg) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", *report.ang_err_deg);
        row << buf;
    } else {
        row << "-";
    }
    row << ' ';
    if (report.rmsd_value) {
        row << fmt17(*report.rmsd_value);
    } else {
        row << "-";
    }
    row << ' ' << report.iterations << ' ' << fmt17(report.runtime_seconds);
    return row.str();
}

PointCloud voxel_downsample(const PointCloud& cloud, double grid_step) {
    if (!(grid_step > 0.0)) {
        throw InvalidInputError("voxel_downsample: grid step must be positive");
    }
    if (cloud.size() == 0) return {};

    const Aabb box = bounding_box(cloud.positions);
    // cell indices are non-negative and bounded by extent/step, so packing
    // three 21-bit coordinates is injective
    auto cell_key = [&](const Eigen::Vector3d& p) {
        const auto ix = static_cast<std::int64_t>(std::floor((p.x() - box.min.x()) / grid_step));
        const auto iy = static_cast<std::int64_t>(std::floor((p.y() - box.min.y()) / grid_step));
        const auto iz = static_cast<std::int64_t>(std::floor((p.z() - box.min.z()) / grid_step));
        if (ix >= (1 << 21) || iy >= (1 << 21) || iz >= (1 << 21)) {
            throw InvalidInputError("voxel_downsample: grid step too small for extent");
        }
        return (ix << 42) | (iy << 21) | iz;
    };

    struct Cell {
        Eigen::Vector3d sum = Eigen::Vector3d::Zero();
        int count = 0;
        int order = 0;
    };
    std::unordered_map<std::int64_t, Cell> cells;
    cells.reserve(cloud.size());
    int next_order = 0;
    for (const auto& p : cloud.positions) {
        Cell& cell = cells[cell_key(p)];
        if (cell.count == 0) cell.order = next_order++;
        cell.sum += p;
        ++cell.count;
    }

    std::vector<const Cell*> ordered(cells.size());
    for (const auto& [key, cell] : cells) ordered[cell.order] = &cell;

    PointCloud out;
    out.positions.reserve(ordered.size());
    for (const Cell* cell : ordered) {
        out.positions.push_back(cell->sum / static_cast<double>(cell->count));
    }
    return out;
}

} // namespace graphreg
