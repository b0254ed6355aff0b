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

#include "graphreg/robust.hpp"

#include "graphreg/errors.hpp"

#include <algorithm>
#include <cmath>

namespace graphreg {

double median(std::vector<double> values) {
    if (values.empty()) {
        throw InvalidInputError("median: empty list");
    }
    const std::size_t n = values.size();
    const std::size_t mid = n / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    const double hi = values[mid];
    if (n % 2 == 1) return hi;
    const double lo = *std::max_element(values.begin(), values.begin() + mid);
    return (lo + hi) / 2.0;
}

double mad(const std::vector<double>& values) {
    const double med = median(values);
    std::vector<double> deviations;
    deviations.reserve(values.size());
    for (double v : values) deviations.push_back(std::abs(v - med));
    return median(std::move(deviations));
}

OutlierReport x84_filter(const PointCloud& cloud, const std::vector<double>& intensities,
                         double alpha, X84Rule rule) {
    if (intensities.size() != cloud.size()) {
        throw InvalidInputError("x84_filter: intensity list does not match cloud size");
    }
    if (intensities.empty()) {
        throw InvalidInputError("x84_filter: empty intensity list");
    }
    if (!(alpha > 0.0)) {
        throw InvalidInputError("x84_filter: alpha must be positive");
    }

    OutlierReport report;
    report.median_intensity = median(intensities);
    report.mad = mad(intensities);

    if (report.mad == 0.0) {
        report.degenerate = true;
        report.threshold = report.median_intensity;
    } else {
        report.threshold = rule == X84Rule::median_centered
                               ? report.median_intensity + alpha * report.mad
                               : alpha * report.mad;
    }

    const int n = static_cast<int>(intensities.size());
    for (int i = 0; i < n; ++i) {
        if (intensities[i] > report.threshold) {
            report.removed_indices.push_back(i);
        } else {
            report.kept_indices.push_back(i);
        }
    }
    return report;
}

} // namespace graphreg
