// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <stdexcept>

#include "pcqa/neighbor_index.hpp"
#include "pcqa/point_cloud.hpp"

namespace pcqa {

/// Nearest-neighbor texture transfer: every geometry point takes the color of
/// its nearest reference point (ties to the lowest index). Positions are
/// passed through bit-exactly; normals of the geometry cloud are kept.
inline PointCloud recolor(const PointCloud& geometry, const PointCloud& reference) {
    if (geometry.empty() || reference.empty())
        throw std::invalid_argument("recolor: empty input cloud");
    if (!reference.has_colors())
        throw std::invalid_argument("recolor: reference cloud has no colors");
    const NeighborIndex ref_index(reference);
    PointCloud out = geometry;
    out.colors.resize(geometry.size());
    for (std::size_t i = 0; i < geometry.size(); ++i)
        out.colors[i] = reference.colors[ref_index.nearest(geometry.positions[i]).index];
    return out;
}

} // namespace pcqa
