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

#include "graphreg/kdtree.hpp"

#include <algorithm>
#include <limits>

namespace graphreg {

namespace {

// worst candidate first: larger distance, then larger index
bool worse(const KdTree3::Neighbor& a, const KdTree3::Neighbor& b) {
    if (a.sq_dist != b.sq_dist) return a.sq_dist < b.sq_dist;
    return a.index < b.index;
}

// bounded best-k collector backed by a max-heap
class KnnCollector {
public:
    KnnCollector(int k, int skip) : k_(k), skip_(skip) { heap_.reserve(k); }

    void offer(int index, double sq_dist) {
        if (index == skip_) return;
        const KdTree3::Neighbor cand{index, sq_dist};
        if (static_cast<int>(heap_.size()) < k_) {
            heap_.push_back(cand);
            std::push_heap(heap_.begin(), heap_.end(), worse);
        } else if (worse(cand, heap_.front())) {
            std::pop_heap(heap_.begin(), heap_.end(), worse);
            heap_.back() = cand;
            std::push_heap(heap_.begin(), heap_.end(), worse);
        }
    }

    bool full() const { return static_cast<int>(heap_.size()) == k_; }
    double worst_sq_dist() const {
        return full() ? heap_.front().sq_dist : std::numeric_limits<double>::infinity();
    }

    std::vector<KdTree3::Neighbor> sorted() && {
        std::sort_heap(heap_.begin(), heap_.end(), worse);
        return std::move(heap_);
    }

private:
    int k_;
    int skip_;
    std::vector<KdTree3::Neighbor> heap_;
};

} // namespace

KdTree3::KdTree3(const std::vector<Eigen::Vector3d>& points) : points_(&points) {
    order_.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) order_[i] = static_cast<int>(i);
    if (!points.empty()) {
        nodes_.reserve(2 * points.size() / kLeafSize + 8);
        root_ = build(0, static_cast<int>(points.size()));
    }
}

int KdTree3::build(int begin, int end) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    if (end - begin <= kLeafSize) {
        nodes_[id].begin = begin;
        nodes_[id].end = end;
        return id;
    }

    Eigen::Vector3d lo = (*points_)[order_[begin]];
    Eigen::Vector3d hi = lo;
    for (int i = begin + 1; i < end; ++i) {
        lo = lo.cwiseMin((*points_)[order_[i]]);
        hi = hi.cwiseMax((*points_)[order_[i]]);
    }
    int axis = 0;
    (hi - lo).maxCoeff(&axis);

    const int mid = begin + (end - begin) / 2;
    const auto& pts = *points_;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&pts, axis](int a, int b) {
                         const double ca = pts[a][axis], cb = pts[b][axis];
                         if (ca != cb) return ca < cb;
                         return a < b;
                     });

    nodes_[id].axis = axis;
    nodes_[id].split = pts[order_[mid]][axis];
    const int left = build(begin, mid);
    const int right = build(mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

template <typename Visitor>
void KdTree3::search(int node, const Eigen::Vector3d& query, Visitor& visitor) const {
    const Node& n = nodes_[node];
    if (n.left < 0) {
        for (int i = n.begin; i < n.end; ++i) {
            const int idx = order_[i];
            visitor.offer(idx, (query - (*points_)[idx]).squaredNorm());
        }
        return;
    }
    const double diff = query[n.axis] - n.split;
    const int near = diff < 0.0 ? n.left : n.right;
    const int far = diff < 0.0 ? n.right : n.left;
    search(near, query, visitor);
    // the far side may still hold equal-distance, lower-index candidates
    if (diff * diff <= visitor.worst_sq_dist()) {
        search(far, query, visitor);
    }
}

std::vector<KdTree3::Neighbor> KdTree3::knn(const Eigen::Vector3d& query, int k,
                                            int skip_index) const {
    if (k <= 0 || root_ < 0) return {};
    KnnCollector collector(k, skip_index);
    search(root_, query, collector);
    return std::move(collector).sorted();
}

namespace {

class NearestCollector {
public:
    explicit NearestCollector(int skip) : skip_(skip) {}

    void offer(int index, double sq_dist) {
        if (index == skip_) return;
        if (sq_dist < best_.sq_dist ||
            (sq_dist == best_.sq_dist && index < best_.index)) {
            best_ = {index, sq_dist};
        }
    }

    double worst_sq_dist() const { return best_.sq_dist; }
    int index() const { return best_.index; }

private:
    int skip_;
    KdTree3::Neighbor best_{-1, std::numeric_limits<double>::infinity()};
};

} // namespace

int KdTree3::nearest(const Eigen::Vector3d& query, int skip_index) const {
    if (root_ < 0) return -1;
    NearestCollector collector(skip_index);
    search(root_, query, collector);
    return collector.index();
}

} // namespace graphreg
