// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "pcqa/point_cloud.hpp"
#include "pcqa/vec3.hpp"

namespace pcqa {

struct Neighbor {
    std::size_t index = 0;  // original point index
    double distance = 0.0;  // Euclidean
};

/// Immutable kd-tree over one cloud's positions.
///
/// Contract: k_nearest returns exactly the k points with smallest Euclidean
/// distance, ties broken by lowest original index (lexicographic on
/// (distance, index), equal to an exhaustive scan bit for bit); radius
/// queries return exactly the points with distance <= r. Queries are
/// const and safe from any number of threads.
class NeighborIndex {
public:
    explicit NeighborIndex(const PointCloud& cloud) : NeighborIndex(cloud.positions) {}

    explicit NeighborIndex(std::vector<Vec3> points) : points_(std::move(points)) {
        if (points_.empty()) throw std::invalid_argument("neighbor index: empty point set");
        order_.resize(points_.size());
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        nodes_.reserve(2 * points_.size() / kLeafSize + 2);
        root_ = build(0, points_.size());
    }

    std::size_t size() const { return points_.size(); }
    const std::vector<Vec3>& points() const { return points_; }

    std::vector<Neighbor> k_nearest(Vec3 query, std::size_t k) const {
        if (k < 1 || k > points_.size())
            throw std::out_of_range("k_nearest: k must be in [1, " + std::to_string(points_.size()) +
                                    "], got " + std::to_string(k));
        KnnState state{k, {}};
        state.heap.reserve(k + 1);
        search_knn(root_, query, state);
        std::vector<Neighbor> out(state.heap.size());
        std::sort(state.heap.begin(), state.heap.end(), CandLess{});
        for (std::size_t i = 0; i < state.heap.size(); ++i)
            out[i] = {state.heap[i].index, std::sqrt(state.heap[i].d2)};
        return out;
    }

    /// All points with distance <= r, ascending (distance, index).
    std::vector<Neighbor> radius(Vec3 query, double r) const {
        if (r < 0.0) throw std::invalid_argument("radius query: negative radius");
        std::vector<Cand> found;
        search_radius(root_, query, r * r, found);
        std::sort(found.begin(), found.end(), CandLess{});
        std::vector<Neighbor> out(found.size());
        for (std::size_t i = 0; i < found.size(); ++i)
            out[i] = {found[i].index, std::sqrt(found[i].d2)};
        return out;
    }

    Neighbor nearest(Vec3 query) const { return k_nearest(query, 1).front(); }

private:
    static constexpr std::size_t kLeafSize = 16;
    static constexpr std::uint32_t kNone = 0xffffffffu;

    struct Node {
        double split = 0.0;
        std::uint32_t left = kNone;   // node id
        std::uint32_t right = kNone;  // node id
        std::uint32_t begin = 0;      // leaf range into order_
        std::uint32_t end = 0;
        std::uint8_t axis = 0;
        bool leaf = false;
    };

    struct Cand {
        double d2;
        std::size_t index;
    };
    struct CandLess {
        bool operator()(const Cand& a, const Cand& b) const {
            return a.d2 != b.d2 ? a.d2 < b.d2 : a.index < b.index;
        }
    };

    struct KnnState {
        std::size_t k;
        std::vector<Cand> heap;  // max-heap on (d2, index)
        bool full() const { return heap.size() == k; }
        const Cand& worst() const { return heap.front(); }
        void offer(Cand c) {
            if (!full()) {
                heap.push_back(c);
                std::push_heap(heap.begin(), heap.end(), CandLess{});
            } else if (CandLess{}(c, heap.front())) {
                std::pop_heap(heap.begin(), heap.end(), CandLess{});
                heap.back() = c;
                std::push_heap(heap.begin(), heap.end(), CandLess{});
            }
        }
    };

    std::uint32_t build(std::size_t begin, std::size_t end) {
        Node node;
        if (end - begin <= kLeafSize) {
            node.leaf = true;
            node.begin = static_cast<std::uint32_t>(begin);
            node.end = static_cast<std::uint32_t>(end);
            nodes_.push_back(node);
            return static_cast<std::uint32_t>(nodes_.size() - 1);
        }
        Vec3 lo = points_[order_[begin]], hi = lo;
        for (std::size_t i = begin + 1; i < end; ++i) {
            const Vec3& p = points_[order_[i]];
            for (int a = 0; a < 3; ++a) {
                if (p[a] < lo[a]) lo[a] = p[a];
                if (p[a] > hi[a]) hi[a] = p[a];
            }
        }
        const Vec3 ext = hi - lo;
        std::uint8_t axis = 0;
        if (ext.y > ext[axis]) axis = 1;
        if (ext.z > ext[axis]) axis = 2;

        const std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                         [&](std::size_t a, std::size_t b) {
                             const double ca = points_[a][axis], cb = points_[b][axis];
                             return ca != cb ? ca < cb : a < b;
                         });
        node.axis = axis;
        node.split = points_[order_[mid]][axis];
        nodes_.push_back(node);
        const std::uint32_t id = static_cast<std::uint32_t>(nodes_.size() - 1);
        const std::uint32_t left = build(begin, mid);
        const std::uint32_t right = build(mid, end);
        nodes_[id].left = left;
        nodes_[id].right = right;
        return id;
    }

    void search_knn(std::uint32_t id, Vec3 query, KnnState& state) const {
        const Node& node = nodes_[id];
        if (node.leaf) {
            for (std::uint32_t i = node.begin; i < node.end; ++i) {
                const std::size_t idx = order_[i];
                state.offer({squared_distance(query, points_[idx]), idx});
            }
            return;
        }
        const double diff = query[node.axis] - node.split;
        const std::uint32_t near = diff < 0.0 ? node.left : node.right;
        const std::uint32_t far = diff < 0.0 ? node.right : node.left;
        search_knn(near, query, state);
        // A far-side point at exactly the current worst distance can still win
        // on index, so only prune on a strict bound violation.
        if (!state.full() || diff * diff <= state.worst().d2) search_knn(far, query, state);
    }

    void search_radius(std::uint32_t id, Vec3 query, double r2, std::vector<Cand>& out) const {
        const Node& node = nodes_[id];
        if (node.leaf) {
            for (std::uint32_t i = node.begin; i < node.end; ++i) {
                const std::size_t idx = order_[i];
                const double d2 = squared_distance(query, points_[idx]);
                if (d2 <= r2) out.push_back({d2, idx});
            }
            return;
        }
        const double diff = query[node.axis] - node.split;
        if (diff < 0.0) {
            search_radius(node.left, query, r2, out);
            if (diff * diff <= r2) search_radius(node.right, query, r2, out);
        } else {
            search_radius(node.right, query, r2, out);
            if (diff * diff <= r2) search_radius(node.left, query, r2, out);
        }
    }

    std::vector<Vec3> points_;
    std::vector<std::size_t> order_;
    std::vector<Node> nodes_;
    std::uint32_t root_ = 0;
};

} // namespace pcqa
