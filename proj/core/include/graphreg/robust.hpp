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

#include <vector>

namespace graphreg {

/// Median; an even-length list yields the mean of the two central order
/// statistics. Empty input raises InvalidInputError.
double median(std::vector<double> values);

/// Median absolute deviation med_i |v_i - med_j v_j|.
double mad(const std::vector<double>& values);

/// Rejection rule. median_centered removes values above
/// median + alpha * MAD; literal removes values above alpha * MAD.
enum class X84Rule { median_centered, literal };

struct OutlierReport {
    std::vector<int> kept_indices;
    std::vector<int> removed_indices;
    double median_intensity = 0.0;
    double mad = 0.0;
    double threshold = 0.0;
    /// Set when MAD collapses to zero. In that case values strictly above
    /// the median are removed (they sit arbitrarily many MADs out) and the
    /// threshold degrades to the median itself.
    bool degenerate = false;
};

/// One-sided X84 outlier rejection over per-point intensities.
OutlierReport x84_filter(const PointCloud& cloud, const std::vector<double>& intensities,
                         double alpha = 5.2, X84Rule rule = X84Rule::median_centered);

} // namespace graphreg
