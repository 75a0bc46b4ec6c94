// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "pcqa/color.hpp"
#include "pcqa/hull.hpp"
#include "pcqa/neighbor_index.hpp"
#include "pcqa/point_cloud.hpp"

namespace pcqa {

/// The content-descriptive statistics reported per cloud: sparsity in model
/// units, color gamut volume as % of the unit YCbCr cube, and the per-channel
/// standard deviations of the normalized YCbCr channels.
struct ContentProfile {
    double sparsity = 0.0;
    double gamut_volume_pct = 0.0;
    double y_dev = 0.0;
    double cb_dev = 0.0;
    double cr_dev = 0.0;
    bool gamut_degenerate = false;  // fewer than 4 non-coplanar distinct colors
};

/// Mean distance from each point to its K nearest other points, averaged over
/// the cloud. K is clamped to n-1.
inline double sparsity(const PointCloud& cloud, const NeighborIndex& index, std::size_t k = 20) {
    if (cloud.size() < 2) throw std::invalid_argument("sparsity: needs at least 2 points");
    if (k < 1) throw std::invalid_argument("sparsity: K must be >= 1");
    const std::size_t kk = std::min(k, cloud.size() - 1);
    double total = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        // k+1 results cover the nearest kk others whether or not the query
        // point itself makes the cut (duplicates can tie it out).
        const auto nn = index.k_nearest(cloud.positions[i], kk + 1);
        double sum = 0.0;
        std::size_t taken = 0;
        for (const Neighbor& nb : nn) {
            if (nb.index == i) continue;  // self
            if (taken == kk) break;
            sum += nb.distance;
            ++taken;
        }
        total += sum / static_cast<double>(kk);
    }
    return total / static_cast<double>(cloud.size());
}

inline double sparsity(const PointCloud& cloud, std::size_t k = 20) {
    return sparsity(cloud, NeighborIndex(cloud), k);
}

/// Convex-hull volume of the cloud's colors in normalized YCbCr space, as a
/// percentage of the unit cube. Duplicate colors are removed first; fewer
/// than 4 non-coplanar distinct colors yield 0 flagged degenerate.
inline std::pair<double, bool> gamut_volume(const PointCloud& cloud,
                                            YcbcrMatrix matrix = YcbcrMatrix::bt709) {
    if (!cloud.has_colors()) throw std::invalid_argument("gamut_volume: cloud has no colors");
    std::vector<Rgb8> distinct = cloud.colors;
    std::sort(distinct.begin(), distinct.end(), [](Rgb8 a, Rgb8 b) {
        return std::tie(a.r, a.g, a.b) < std::tie(b.r, b.g, b.b);
    });
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<Vec3> pts;
    pts.reserve(distinct.size());
    for (Rgb8 c : distinct) {
        const Ycbcr y = rgb_to_ycbcr(c, matrix);
        pts.push_back({y.y, y.cb, y.cr});
    }
    const double vol = convex_hull_volume(std::move(pts));
    return {vol * 100.0, vol == 0.0};
}

/// Population standard deviation of each normalized YCbCr channel. Two-pass
/// so near-constant channels don't suffer cancellation; exactly-constant
/// channels report 0.
inline std::tuple<double, double, double> channel_stats(const PointCloud& cloud,
                                                        YcbcrMatrix matrix = YcbcrMatrix::bt709) {
    if (!cloud.has_colors()) throw std::invalid_argument("channel_stats: cloud has no colors");
    const double n = static_cast<double>(cloud.colors.size());
    double sum[3] = {0, 0, 0};
    double lo[3], hi[3];
    bool first = true;
    for (Rgb8 c : cloud.colors) {
        const Ycbcr v = rgb_to_ycbcr(c, matrix);
        const double ch[3] = {v.y, v.cb, v.cr};
        for (int a = 0; a < 3; ++a) {
            sum[a] += ch[a];
            if (first || ch[a] < lo[a]) lo[a] = ch[a];
            if (first || ch[a] > hi[a]) hi[a] = ch[a];
        }
        first = false;
    }
    const double mean[3] = {sum[0] / n, sum[1] / n, sum[2] / n};
    double ssd[3] = {0, 0, 0};
    for (Rgb8 c : cloud.colors) {
        const Ycbcr v = rgb_to_ycbcr(c, matrix);
        const double ch[3] = {v.y, v.cb, v.cr};
        for (int a = 0; a < 3; ++a) ssd[a] += (ch[a] - mean[a]) * (ch[a] - mean[a]);
    }
    auto dev = [&](int a) { return lo[a] == hi[a] ? 0.0 : std::sqrt(ssd[a] / n); };
    return {dev(0), dev(1), dev(2)};
}

inline ContentProfile characterize(const PointCloud& cloud, std::size_t k = 20,
                                   YcbcrMatrix matrix = YcbcrMatrix::bt709) {
    ContentProfile profile;
    profile.sparsity = sparsity(cloud, k);
    if (cloud.has_colors()) {
        auto [vol, degenerate] = gamut_volume(cloud, matrix);
        profile.gamut_volume_pct = vol;
        profile.gamut_degenerate = degenerate;
        std::tie(profile.y_dev, profile.cb_dev, profile.cr_dev) = channel_stats(cloud, matrix);
    }
    return profile;
}

} // namespace pcqa
