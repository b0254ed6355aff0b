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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "graphreg/errors.hpp"
#include "graphreg/robust.hpp"
#include "graphreg/rng.hpp"

#include <algorithm>
#include <cmath>

using namespace graphreg;

namespace {

// sort-based oracle with the same even-length convention
double median_oracle(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double mad_oracle(const std::vector<double>& v) {
    const double med = median_oracle(v);
    std::vector<double> dev;
    dev.reserve(v.size());
    for (double x : v) dev.push_back(std::abs(x - med));
    return median_oracle(dev);
}

PointCloud cloud_of(std::size_t n) {
    PointCloud cloud;
    cloud.positions.assign(n, Eigen::Vector3d::Zero());
    return cloud;
}

} // namespace

TEST_CASE("mad hand values") {
    CHECK(mad({1, 2, 3, 4, 5}) == 1.0);
    CHECK(mad({7, 7, 7}) == 0.0);
    CHECK(mad({1, 1, 1, 1, 100}) == 0.0);
}

TEST_CASE("mad equals the brute-force oracle exactly") {
    Rng rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_uniform() * 1000);
        std::vector<double> values;
        values.reserve(n);
        for (int i = 0; i < n; ++i) values.push_back(rng.next_uniform(-50, 50));
        CHECK(mad(values) == mad_oracle(values));
        CHECK(median(values) == median_oracle(values));
    }
}

TEST_CASE("mad rejects an empty list") {
    CHECK_THROWS_AS(mad({}), InvalidInputError);
    CHECK_THROWS_AS(median({}), InvalidInputError);
}

TEST_CASE("x84 keeps everything on constant intensities") {
    const std::vector<double> intensities(9, 4.2);
    const OutlierReport report = x84_filter(cloud_of(9), intensities);
    CHECK(report.degenerate);
    CHECK(report.removed_indices.empty());
    CHECK(report.kept_indices.size() == 9);
}

TEST_CASE("x84 degenerate fallback removes the lone extreme value") {
    const std::vector<double> intensities = {1, 1, 1, 1, 1, 1, 1, 100};
    const OutlierReport report = x84_filter(cloud_of(8), intensities);
    CHECK(report.degenerate);       // median 1, deviations mostly 0 -> MAD 0
    CHECK(report.mad == 0.0);
    REQUIRE(report.removed_indices.size() == 1);
    CHECK(report.removed_indices[0] == 7);
}

TEST_CASE("x84 median-centered threshold") {
    const std::vector<double> intensities = {0, 1, 2, 3, 4, 5, 6, 7, 8, 40};
    const OutlierReport report = x84_filter(cloud_of(10), intensities, 2.0);
    // median 4.5, deviations {4.5,3.5,...,35.5} -> MAD 2.5, threshold 9.5
    CHECK(report.median_intensity == doctest::Approx(4.5));
    CHECK(report.mad == doctest::Approx(2.5));
    CHECK(report.threshold == doctest::Approx(9.5));
    REQUIRE(report.removed_indices.size() == 1);
    CHECK(report.removed_indices[0] == 9);
}

TEST_CASE("x84 literal rule drops the median offset") {
    const std::vector<double> intensities = {0, 1, 2, 3, 4, 5, 6, 7, 8, 40};
    const OutlierReport report =
        x84_filter(cloud_of(10), intensities, 2.0, X84Rule::literal);
    CHECK(report.threshold == doctest::Approx(5.0)); // 2 * MAD
    CHECK(report.removed_indices.size() == 4);       // 6, 7, 8, 40
}

TEST_CASE("x84 partitions the index range") {
    Rng rng(17);
    std::vector<double> intensities;
    for (int i = 0; i < 500; ++i) intensities.push_back(rng.next_uniform(0, 10));
    const OutlierReport report = x84_filter(cloud_of(500), intensities);
    std::vector<char> seen(500, 0);
    for (int i : report.kept_indices) seen[i] += 1;
    for (int i : report.removed_indices) seen[i] += 1;
    CHECK(std::all_of(seen.begin(), seen.end(), [](char c) { return c == 1; }));
}

TEST_CASE("x84 removal is monotone in alpha") {
    Rng rng(23);
    std::vector<double> intensities;
    for (int i = 0; i < 400; ++i) {
        intensities.push_back(std::abs(rng.next_normal()));
    }
    for (int i = 0; i < 40; ++i) intensities.push_back(20.0 + rng.next_uniform() * 30.0);

    const PointCloud cloud = cloud_of(intensities.size());
    std::vector<int> previous;
    bool first = true;
    for (double alpha : {1.0, 2.0, 3.0, 5.2, 8.0}) {
        const OutlierReport report = x84_filter(cloud, intensities, alpha);
        if (!first) {
            // removed set must shrink (or stay) as alpha grows
            CHECK(std::includes(previous.begin(), previous.end(),
                                report.removed_indices.begin(),
                                report.removed_indices.end()));
        }
        previous = report.removed_indices;
        first = false;
    }
}

TEST_CASE("x84 partition is invariant to positive scaling") {
    Rng rng(29);
    std::vector<double> intensities;
    for (int i = 0; i < 300; ++i) intensities.push_back(std::abs(rng.next_normal()));
    for (int i = 0; i < 20; ++i) intensities.push_back(15.0 + rng.next_uniform() * 5.0);
    const PointCloud cloud = cloud_of(intensities.size());

    for (const X84Rule rule : {X84Rule::median_centered, X84Rule::literal}) {
        const OutlierReport base = x84_filter(cloud, intensities, 5.2, rule);
        for (double scale : {4.0, 0.25, 1024.0}) { // exact binary scalings
            std::vector<double> scaled;
            scaled.reserve(intensities.size());
            for (double v : intensities) scaled.push_back(scale * v);
            const OutlierReport report = x84_filter(cloud, scaled, 5.2, rule);
            CHECK(report.kept_indices == base.kept_indices);
            CHECK(report.removed_indices == base.removed_indices);
        }
    }
}

TEST_CASE("x84 input validation") {
    CHECK_THROWS_AS(x84_filter(cloud_of(3), {1.0, 2.0}), InvalidInputError);
    CHECK_THROWS_AS(x84_filter(cloud_of(2), {1.0, 2.0}, 0.0), InvalidInputError);
}
