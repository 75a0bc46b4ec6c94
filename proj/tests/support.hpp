// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT
//
// Shared test helpers: deterministic cloud generators, rigid transforms, and
// the exhaustive-scan oracle the spatial index is checked against.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pcqa/neighbor_index.hpp"
#include "pcqa/point_cloud.hpp"

namespace pcqa::test {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline PointCloud random_cloud(std::size_t n, std::uint64_t seed, double extent = 100.0,
                               bool with_colors = false) {
    std::mt19937_64 gen = rng(seed);
    std::uniform_real_distribution<double> pos(0.0, extent);
    std::uniform_int_distribution<int> chan(0, 255);
    PointCloud cloud;
    cloud.positions.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        cloud.positions.push_back({pos(gen), pos(gen), pos(gen)});
    if (with_colors) {
        cloud.colors.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            cloud.colors.push_back({static_cast<std::uint8_t>(chan(gen)),
                                    static_cast<std::uint8_t>(chan(gen)),
                                    static_cast<std::uint8_t>(chan(gen))});
    }
    return cloud;
}

inline PointCloud sphere_cloud(std::size_t n, std::uint64_t seed, double radius = 1.0) {
    std::mt19937_64 gen = rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    PointCloud cloud;
    cloud.positions.reserve(n);
    cloud.normals.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 dir = normalized({gauss(gen), gauss(gen), gauss(gen)});
        if (norm(dir) == 0.0) dir = {0, 0, 1};
        cloud.positions.push_back(dir * radius);
        cloud.normals.push_back(dir);
    }
    return cloud;
}

struct Rigid {
    double m[3][3];
    Vec3 t;
    Vec3 apply(Vec3 p) const {
        return {m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z + t.x,
                m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z + t.y,
                m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z + t.z};
    }
    Vec3 rotate(Vec3 v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }
};

inline Rigid random_rigid(std::uint64_t seed, double shift = 40.0) {
    std::mt19937_64 gen = rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> off(-shift, shift);
    const double a = angle(gen), b = angle(gen), c = angle(gen);
    const double ca = std::cos(a), sa = std::sin(a);
    const double cb = std::cos(b), sb = std::sin(b);
    const double cc = std::cos(c), sc = std::sin(c);
    Rigid r;
    // ZYX Euler composition
    r.m[0][0] = cb * cc;
    r.m[0][1] = cc * sa * sb - ca * sc;
    r.m[0][2] = ca * cc * sb + sa * sc;
    r.m[1][0] = cb * sc;
    r.m[1][1] = ca * cc + sa * sb * sc;
    r.m[1][2] = ca * sb * sc - cc * sa;
    r.m[2][0] = -sb;
    r.m[2][1] = cb * sa;
    r.m[2][2] = ca * cb;
    r.t = {off(gen), off(gen), off(gen)};
    return r;
}

inline PointCloud transformed(const PointCloud& cloud, const Rigid& r) {
    PointCloud out = cloud;
    for (Vec3& p : out.positions) p = r.apply(p);
    for (Vec3& n : out.normals) n = r.rotate(n);
    return out;
}

/// Exhaustive k-NN scan with the same (distance, index) tie ordering the
/// index promises. Independent of NeighborIndex.
inline std::vector<Neighbor> brute_force_knn(const std::vector<Vec3>& pts, Vec3 query,
                                             std::size_t k) {
    struct Entry {
        double d2;
        std::size_t idx;
    };
    std::vector<Entry> all;
    all.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) all.push_back({squared_distance(query, pts[i]), i});
    std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
        return a.d2 != b.d2 ? a.d2 < b.d2 : a.idx < b.idx;
    });
    std::vector<Neighbor> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = {all[i].idx, std::sqrt(all[i].d2)};
    return out;
}

inline std::vector<Neighbor> brute_force_radius(const std::vector<Vec3>& pts, Vec3 query, double r) {
    std::vector<Neighbor> out;
    const double r2 = r * r;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d2 = squared_distance(query, pts[i]);
        if (d2 <= r2) out.push_back({i, std::sqrt(d2)});
    }
    std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.index < b.index;
    });
    return out;
}

} // namespace pcqa::test
