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

#include "graphreg/kdtree.hpp"
#include "test_clouds.hpp"

#include <algorithm>

using namespace graphreg;

namespace {

// brute-force reference with the same (distance, index) ordering
std::vector<KdTree3::Neighbor> brute_knn(const std::vector<Eigen::Vector3d>& points,
                                         const Eigen::Vector3d& query, int k, int skip) {
    std::vector<KdTree3::Neighbor> all;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (static_cast<int>(i) == skip) continue;
        all.push_back({static_cast<int>(i), (points[i] - query).squaredNorm()});
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.sq_dist != b.sq_dist) return a.sq_dist < b.sq_dist;
        return a.index < b.index;
    });
    if (static_cast<int>(all.size()) > k) all.resize(k);
    return all;
}

} // namespace

TEST_CASE("knn matches brute force on random clouds") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const PointCloud cloud = testing::make_surface(300, seed);
        const KdTree3 tree(cloud.positions);
        Rng rng(seed + 100);
        for (int q = 0; q < 50; ++q) {
            const Eigen::Vector3d query(rng.next_uniform(-1.5, 1.5),
                                        rng.next_uniform(-1.5, 1.5),
                                        rng.next_uniform(-1.5, 1.5));
            const auto got = tree.knn(query, 12);
            const auto expect = brute_knn(cloud.positions, query, 12, -1);
            REQUIRE(got.size() == expect.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].index == expect[i].index);
                CHECK(got[i].sq_dist == expect[i].sq_dist);
            }
        }
    }
}

TEST_CASE("self queries honor skip_index") {
    const PointCloud cloud = testing::make_surface(120, 9);
    const KdTree3 tree(cloud.positions);
    for (int i = 0; i < 120; ++i) {
        const auto got = tree.knn(cloud.positions[i], 5, i);
        const auto expect = brute_knn(cloud.positions, cloud.positions[i], 5, i);
        REQUIRE(got.size() == 5);
        for (std::size_t j = 0; j < got.size(); ++j) {
            CHECK(got[j].index == expect[j].index);
        }
    }
}

TEST_CASE("ties resolve to the lowest index") {
    // four corners equidistant from the center
    std::vector<Eigen::Vector3d> points = {
        {1, 1, 0}, {-1, 1, 0}, {-1, -1, 0}, {1, -1, 0}, {5, 5, 5}};
    const KdTree3 tree(points);
    const auto got = tree.knn({0, 0, 0}, 2);
    REQUIRE(got.size() == 2);
    CHECK(got[0].index == 0);
    CHECK(got[1].index == 1);
}

TEST_CASE("duplicate points are returned at distance zero") {
    std::vector<Eigen::Vector3d> points = {{1, 2, 3}, {1, 2, 3}, {4, 4, 4}};
    const KdTree3 tree(points);
    const auto got = tree.knn({1, 2, 3}, 2, 0);
    REQUIRE(got.size() == 2);
    CHECK(got[0].index == 1);
    CHECK(got[0].sq_dist == 0.0);
}

TEST_CASE("nearest agrees with knn(1)") {
    const PointCloud cloud = testing::make_surface(200, 21);
    const KdTree3 tree(cloud.positions);
    Rng rng(77);
    for (int q = 0; q < 100; ++q) {
        const Eigen::Vector3d query(rng.next_uniform(-2, 2), rng.next_uniform(-2, 2),
                                    rng.next_uniform(-2, 2));
        CHECK(tree.nearest(query) == tree.knn(query, 1)[0].index);
    }
}
