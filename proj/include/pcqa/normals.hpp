// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "pcqa/neighbor_index.hpp"
#include "pcqa/point_cloud.hpp"

namespace pcqa {

/// Local quadric height field z = a x^2 + b xy + c y^2 + d x + e y + f
/// fitted over a neighborhood in a PCA frame centered at the query point.
/// Shared by normal estimation and the curvature/projection machinery.
struct LocalQuadric {
    Vec3 origin;                 // query point (frame center)
    Vec3 t1, t2, axis;           // tangent basis and PCA minor axis
    double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;

    /// Analytic surface normal at the frame origin (x = y = 0), unnormalized
    /// in world coordinates: -d t1 - e t2 + axis.
    Vec3 normal_at_origin() const { return normalized(t1 * -d + t2 * -e + axis); }

    /// Projection of the origin onto the fitted surface: origin + f * axis.
    Vec3 projected_origin() const { return origin + axis * f; }

    /// Mean curvature of the height field at the frame origin.
    double mean_curvature() const {
        const double fx = d, fy = e;
        const double fxx = 2.0 * a, fyy = 2.0 * c, fxy = b;
        const double g = 1.0 + fx * fx + fy * fy;
        return 0.5 * ((1.0 + fx * fx) * fyy + (1.0 + fy * fy) * fxx - 2.0 * fxy * fx * fy) /
               std::pow(g, 1.5);
    }
};

namespace detail {

inline Eigen::Matrix3d neighborhood_covariance(std::span<const Vec3> pts,
                                               std::span<const std::size_t> idx,
                                               Eigen::Vector3d& mean_out) {
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (std::size_t i : idx) mean += Eigen::Vector3d(pts[i].x, pts[i].y, pts[i].z);
    mean /= static_cast<double>(idx.size());
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (std::size_t i : idx) {
        const Eigen::Vector3d dvec = Eigen::Vector3d(pts[i].x, pts[i].y, pts[i].z) - mean;
        cov += dvec * dvec.transpose();
    }
    cov /= static_cast<double>(idx.size());
    mean_out = mean;
    return cov;
}

} // namespace detail

/// PCA frame of a neighborhood: minor axis (plane normal direction) plus the
/// two tangents, eigenvalues ascending.
struct PcaFrame {
    Vec3 t1, t2, minor;
    Vec3 eigenvalues;  // ascending: minor, mid, major
};

inline PcaFrame pca_frame(std::span<const Vec3> pts, std::span<const std::size_t> idx) {
    Eigen::Vector3d mean;
    const Eigen::Matrix3d cov = detail::neighborhood_covariance(pts, idx, mean);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    const auto v = eig.eigenvectors();
    const auto w = eig.eigenvalues();
    return {{v(0, 2), v(1, 2), v(2, 2)},
            {v(0, 1), v(1, 1), v(2, 1)},
            {v(0, 0), v(1, 0), v(2, 0)},
            {w(0), w(1), w(2)}};
}

/// Least-squares quadric over the neighborhood in the PCA frame of the same
/// neighborhood, centered at `query`. Requires idx.size() >= 6.
inline LocalQuadric fit_local_quadric(std::span<const Vec3> pts, std::span<const std::size_t> idx,
                                      Vec3 query) {
    const PcaFrame frame = pca_frame(pts, idx);
    Eigen::MatrixXd A(idx.size(), 6);
    Eigen::VectorXd rhs(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const Vec3 rel = pts[idx[i]] - query;
        const double u = dot(rel, frame.t1);
        const double v = dot(rel, frame.t2);
        const double h = dot(rel, frame.minor);
        A(static_cast<Eigen::Index>(i), 0) = u * u;
        A(static_cast<Eigen::Index>(i), 1) = u * v;
        A(static_cast<Eigen::Index>(i), 2) = v * v;
        A(static_cast<Eigen::Index>(i), 3) = u;
        A(static_cast<Eigen::Index>(i), 4) = v;
        A(static_cast<Eigen::Index>(i), 5) = 1.0;
        rhs(static_cast<Eigen::Index>(i)) = h;
    }
    const Eigen::VectorXd coeff = A.colPivHouseholderQr().solve(rhs);
    LocalQuadric q;
    q.origin = query;
    q.t1 = frame.t1;
    q.t2 = frame.t2;
    q.axis = frame.minor;
    q.a = coeff(0);
    q.b = coeff(1);
    q.c = coeff(2);
    q.d = coeff(3);
    q.e = coeff(4);
    q.f = coeff(5);
    return q;
}

struct NormalEstimate {
    std::vector<Vec3> normals;          // zero vector where estimation failed
    std::vector<std::size_t> failed;    // indices with < 3 in-radius neighbors
    std::vector<std::size_t> pca_only;  // indices that fell back to the PCA plane normal
};

/// Radius-neighborhood normal estimation. Each point's neighborhood (the
/// point included) is fitted with a quadric height field in its PCA frame and
/// the analytic normal at the point is taken; neighborhoods with fewer than 6
/// points fall back to the PCA plane normal, fewer than 3 are reported as
/// failures. Signs are oriented away from the cloud centroid so that runs are
/// consistent for angular-similarity features.
inline NormalEstimate estimate_normals_report(const PointCloud& cloud, const NeighborIndex& index,
                                              double radius) {
    if (cloud.empty()) throw std::invalid_argument("estimate_normals: empty cloud");
    if (!(radius > 0.0)) throw std::invalid_argument("estimate_normals: radius must be positive");
    const Vec3 center = centroid(cloud);
    NormalEstimate out;
    out.normals.resize(cloud.size());
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const std::vector<Neighbor> hood = index.radius(cloud.positions[i], radius);
        idx.clear();
        idx.reserve(hood.size());
        for (const Neighbor& nb : hood) idx.push_back(nb.index);
        if (idx.size() < 3) {
            out.failed.push_back(i);
            continue;
        }
        Vec3 n;
        if (idx.size() >= 6) {
            n = fit_local_quadric(cloud.positions, idx, cloud.positions[i]).normal_at_origin();
        } else {
            n = pca_frame(cloud.positions, idx).minor;
            out.pca_only.push_back(i);
        }
        if (norm(n) == 0.0) {
            out.failed.push_back(i);
            continue;
        }
        n = normalized(n);
        const double orient = dot(n, cloud.positions[i] - center);
        if (orient < 0.0) {
            n = n * -1.0;
        } else if (orient == 0.0) {
            // Points on the orientation boundary: canonicalize on components.
            if (n.z < 0.0 || (n.z == 0.0 && (n.y < 0.0 || (n.y == 0.0 && n.x < 0.0)))) n = n * -1.0;
        }
        out.normals[i] = n;
    }
    return out;
}

inline NormalEstimate estimate_normals_report(const PointCloud& cloud, double radius) {
    return estimate_normals_report(cloud, NeighborIndex(cloud), radius);
}

/// Convenience wrapper that returns the cloud with normals attached and
/// throws when any point had an insufficient neighborhood.
inline PointCloud estimate_normals(const PointCloud& cloud, double radius) {
    NormalEstimate est = estimate_normals_report(cloud, radius);
    if (!est.failed.empty())
        throw std::runtime_error("estimate_normals: " + std::to_string(est.failed.size()) +
                                 " points with fewer than 3 neighbors in radius (first index " +
                                 std::to_string(est.failed.front()) + ")");
    PointCloud out = cloud;
    out.normals = std::move(est.normals);
    return out;
}

} // namespace pcqa
