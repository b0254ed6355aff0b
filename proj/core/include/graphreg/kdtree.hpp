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

#include <vector>

namespace graphreg {

/// Median-split kd-tree over 3D points. Queries are exact and fully
/// deterministic: neighbor ranking is by (squared distance, index), so
/// ties never depend on traversal order.
class KdTree3 {
public:
    struct Neighbor {
        int index;
        double sq_dist;
    };

    /// The tree keeps a reference to `points`; the caller owns the storage.
    explicit KdTree3(const std::vector<Eigen::Vector3d>& points);

    /// k nearest neighbors of `query` sorted ascending by (sq_dist, index).
    /// `skip_index` excludes one point (self-queries). Returns fewer than k
    /// only when the tree holds fewer eligible points.
    std::vector<Neighbor> knn(const Eigen::Vector3d& query, int k, int skip_index = -1) const;

    /// Index of the single nearest neighbor, -1 on an empty tree.
    int nearest(const Eigen::Vector3d& query, int skip_index = -1) const;

    std::size_t size() const { return points_->size(); }

private:
    struct Node {
        int left = -1;
        int right = -1;
        int axis = 0;
        double split = 0.0;
        int begin = 0; // leaf payload range in order_
        int end = 0;
    };

    int build(int begin, int end);

    const std::vector<Eigen::Vector3d>* points_;
    std::vector<int> order_;
    std::vector<Node> nodes_;
    int root_ = -1;

    static constexpr int kLeafSize = 16;

    template <typename Visitor>
    void search(int node, const Eigen::Vector3d& query, Visitor& visitor) const;
};

} // namespace graphreg
