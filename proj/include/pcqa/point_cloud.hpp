// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcqa/vec3.hpp"

namespace pcqa {

struct Rgb8 {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    friend constexpr bool operator==(Rgb8 a, Rgb8 b) = default;
};

/// Positions plus optional per-point color and unit normals; the universal
/// input/output record of the toolkit. Immutable by convention once built
/// (no member mutates after construction paths hand it out), which is what
/// makes concurrent metric evaluation safe.
struct PointCloud {
    std::vector<Vec3> positions;
    std::vector<Rgb8> colors;   // empty or same length as positions
    std::vector<Vec3> normals;  // empty or same length as positions; unit vectors

    std::size_t size() const { return positions.size(); }
    bool empty() const { return positions.empty(); }
    bool has_colors() const { return !colors.empty(); }
    bool has_normals() const { return !normals.empty(); }

    /// Throws std::invalid_argument when an invariant is broken:
    /// non-empty positions, attribute lengths matching, unit normals.
    void validate(double normal_tol = 1e-6) const {
        if (positions.empty())
            throw std::invalid_argument("point cloud: positions must be non-empty");
        if (!colors.empty() && colors.size() != positions.size())
            throw std::invalid_argument("point cloud: colors length " + std::to_string(colors.size()) +
                                        " != positions length " + std::to_string(positions.size()));
        if (!normals.empty() && normals.size() != positions.size())
            throw std::invalid_argument("point cloud: normals length " + std::to_string(normals.size()) +
                                        " != positions length " + std::to_string(positions.size()));
        for (std::size_t i = 0; i < normals.size(); ++i) {
            const double len = norm(normals[i]);
            if (std::abs(len - 1.0) > normal_tol)
                throw std::invalid_argument("point cloud: normal " + std::to_string(i) +
                                            " has length " + std::to_string(len));
        }
    }
};

struct Aabb {
    Vec3 min;
    Vec3 max;
    Vec3 extent() const { return max - min; }
    double diagonal() const { return norm(max - min); }
};

inline Aabb bounding_box(const PointCloud& cloud) {
    if (cloud.empty()) return {};
    Aabb box{cloud.positions.front(), cloud.positions.front()};
    for (const Vec3& p : cloud.positions) {
        for (int a = 0; a < 3; ++a) {
            if (p[a] < box.min[a]) box.min[a] = p[a];
            if (p[a] > box.max[a]) box.max[a] = p[a];
        }
    }
    return box;
}

inline Vec3 centroid(const PointCloud& cloud) {
    Vec3 sum{};
    for (const Vec3& p : cloud.positions) sum += p;
    return cloud.empty() ? sum : sum / static_cast<double>(cloud.size());
}

/// Rigid-invariant content scale: diameter of the centroid-centered
/// bounding sphere. Used where a metric needs an intrinsic length that
/// must not move under rotation (axis-aligned boxes do).
inline double centroid_sphere_diameter(const PointCloud& cloud) {
    const Vec3 c = centroid(cloud);
    double max_sq = 0.0;
    for (const Vec3& p : cloud.positions) max_sq = std::max(max_sq, squared_distance(p, c));
    return 2.0 * std::sqrt(max_sq);
}

} // namespace pcqa
