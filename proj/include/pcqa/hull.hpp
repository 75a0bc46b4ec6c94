// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "pcqa/vec3.hpp"

namespace pcqa {

/// Volume of the 3D convex hull of a point set, by incremental construction.
/// Degenerate inputs (fewer than 4 points, or all points within `eps` of a
/// common plane) yield 0. `eps` gates the orientation predicates.
inline double convex_hull_volume(std::vector<Vec3> pts, double eps = 1e-10) {
    if (pts.size() < 4) return 0.0;

    auto orient = [](Vec3 a, Vec3 b, Vec3 c, Vec3 d) {
        return dot(cross(b - a, c - a), d - a);
    };

    // Initial tetrahedron: spread apart along successive dimensions.
    std::size_t i1 = 0;
    double best = -1.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double d = squared_distance(pts[0], pts[i]);
        if (d > best) { best = d; i1 = i; }
    }
    if (!(best > eps * eps)) return 0.0;
    const Vec3 dir = pts[i1] - pts[0];
    std::size_t i2 = 0;
    best = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = squared_norm(cross(dir, pts[i] - pts[0]));
        if (d > best) { best = d; i2 = i; }
    }
    if (!(best > eps * eps)) return 0.0;
    std::size_t i3 = 0;
    best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = orient(pts[0], pts[i1], pts[i2], pts[i]);
        if (std::abs(d) > std::abs(best)) { best = d; i3 = i; }
    }
    if (!(std::abs(best) > eps)) return 0.0;

    struct Face {
        std::array<std::size_t, 3> v;
        bool alive = true;
    };
    std::vector<Face> faces;
    auto add_face = [&](std::size_t a, std::size_t b, std::size_t c) {
        faces.push_back({{a, b, c}, true});
    };
    // Orient the initial faces outward around the tetrahedron centroid.
    const Vec3 inner = (pts[0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
    auto add_oriented = [&](std::size_t a, std::size_t b, std::size_t c) {
        if (orient(pts[a], pts[b], pts[c], inner) > 0.0) add_face(a, c, b);
        else add_face(a, b, c);
    };
    add_oriented(0, i1, i2);
    add_oriented(0, i1, i3);
    add_oriented(0, i2, i3);
    add_oriented(i1, i2, i3);

    std::vector<bool> used(pts.size(), false);
    used[0] = used[i1] = used[i2] = used[i3] = true;

    for (std::size_t p = 0; p < pts.size(); ++p) {
        if (used[p]) continue;
        used[p] = true;
        std::vector<std::size_t> visible;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!faces[f].alive) continue;
            if (orient(pts[faces[f].v[0]], pts[faces[f].v[1]], pts[faces[f].v[2]], pts[p]) > eps)
                visible.push_back(f);
        }
        if (visible.empty()) continue;

        // Horizon = directed edges of visible faces whose reverse edge is not
        // itself part of a visible face.
        std::map<std::pair<std::size_t, std::size_t>, int> seen;
        for (std::size_t f : visible) {
            const auto& v = faces[f].v;
            for (int e = 0; e < 3; ++e) {
                const std::size_t a = v[static_cast<std::size_t>(e)];
                const std::size_t b = v[static_cast<std::size_t>((e + 1) % 3)];
                seen[{a, b}] += 1;
            }
        }
        std::vector<std::pair<std::size_t, std::size_t>> horizon;
        for (const auto& [edge, cnt] : seen) {
            (void)cnt;
            if (!seen.count({edge.second, edge.first})) horizon.push_back(edge);
        }
        for (std::size_t f : visible) faces[f].alive = false;
        for (const auto& [a, b] : horizon) add_face(a, b, p);
    }

    double vol6 = 0.0;
    for (const Face& f : faces) {
        if (!f.alive) continue;
        vol6 += orient(inner, pts[f.v[0]], pts[f.v[1]], pts[f.v[2]]);
    }
    // Outward-facing triangles give negative orientation against an interior
    // point under this predicate; take the magnitude.
    return std::abs(vol6) / 6.0;
}

} // namespace pcqa
