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

#include "graphreg/geometry.hpp"
#include "graphreg/pipeline.hpp"

#include <string>

namespace graphreg {

/// Loads PLY (ascii or binary little-endian; x/y/z required, nx/ny/nz
/// picked up when present) or whitespace-delimited XYZ text, keyed off the
/// file extension. Point order is preserved. Malformed content raises
/// ParseError with a line or byte offset; missing files raise IoError.
PointCloud read_cloud(const std::string& path);

enum class CloudFormat { ply_ascii, ply_binary, xyz };

/// Binary PLY stores double precision, so positions round-trip bit for
/// bit; text formats print 17 significant digits.
void write_cloud(const PointCloud& cloud, const std::string& path, CloudFormat format);

/// 4x4 homogeneous transform as 16 whitespace-separated numbers, row-major.
RigidTransform read_transform(const std::string& path);
void write_transform(const RigidTransform& transform, const std::string& path);

/// Structured text report: the homogeneous transform (17 significant
/// digits), metrics, a config echo, and the per-iteration trace table.
void write_report(const RegistrationReport& report, const std::string& path);

/// One table row summarizing a run: name, method, status, metrics,
/// iteration count, runtime (runtime deliberately last so consumers can
/// strip the nondeterministic column).
std::string summary_row(const std::string& name, const std::string& method,
                        const RegistrationReport& report, const std::string& status = "ok");

/// Voxel-grid thinning: one centroid per occupied cell, cells anchored at
/// the bounding-box minimum, output ordered by first occurrence.
PointCloud voxel_downsample(const PointCloud& cloud, double grid_step);

} // namespace graphreg
