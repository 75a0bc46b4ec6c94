// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "pcqa/metrics/common.hpp"
#include "pcqa/neighbor_index.hpp"

namespace pcqa::metrics {

namespace detail {

struct P2dDirection {
    double geometry = 0.0;
    double color = 0.0;
};

/// Mean Mahalanobis distances from each point of `src` to the Gaussian fitted
/// on its K-neighborhood in `tgt`; geometry over 3D positions, color over
/// luminance. Covariances are diagonally loaded (relative + tiny absolute)
/// so repeated-point neighborhoods never fail.
inline P2dDirection p2d_direction(const PointCloud& src, const std::vector<double>& src_luma,
                                  const PointCloud& tgt, const std::vector<double>& tgt_luma,
                                  const NeighborIndex& tgt_index, std::size_t k, double reg) {
    double geo_sum = 0.0, col_sum = 0.0;
    for (std::size_t i = 0; i < src.size(); ++i) {
        const auto hood = tgt_index.k_nearest(src.positions[i], k);
        Eigen::Vector3d mean = Eigen::Vector3d::Zero();
        double lmean = 0.0;
        for (const Neighbor& nb : hood) {
            const Vec3& p = tgt.positions[nb.index];
            mean += Eigen::Vector3d(p.x, p.y, p.z);
            lmean += tgt_luma[nb.index];
        }
        const double n = static_cast<double>(hood.size());
        mean /= n;
        lmean /= n;
        Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
        double lvar = 0.0;
        for (const Neighbor& nb : hood) {
            const Vec3& p = tgt.positions[nb.index];
            const Eigen::Vector3d d = Eigen::Vector3d(p.x, p.y, p.z) - mean;
            cov += d * d.transpose();
            const double ld = tgt_luma[nb.index] - lmean;
            lvar += ld * ld;
        }
        cov /= n;
        lvar /= n;
        const double load = reg * cov.trace() / 3.0 + 1e-12;
        cov.diagonal().array() += load;
        lvar += reg * lvar + 1e-12;

        const Eigen::Vector3d diff(src.positions[i].x - mean.x(), src.positions[i].y - mean.y(),
                                   src.positions[i].z - mean.z());
        const double m2 = diff.dot(cov.ldlt().solve(diff));
        geo_sum += std::sqrt(std::max(0.0, m2));
        col_sum += std::abs(src_luma[i] - lmean) / std::sqrt(lvar);
    }
    return {geo_sum / static_cast<double>(src.size()), col_sum / static_cast<double>(src.size())};
}

} // namespace detail

/// Point-to-distribution quality score: Mahalanobis distances of each point
/// to the Gaussian of its K-neighborhood in the other cloud, averaged per
/// direction; the worse direction is kept per component (geometry, luminance),
/// the two components are averaged into a joint distance, and the score is
/// log10(1 + 1/joint). Higher is better.
inline MetricResult p2d(const PointCloud& ref, const PointCloud& dist, const MetricConfig& cfg = {}) {
    if (!ref.has_colors() || !dist.has_colors())
        throw std::invalid_argument("p2d: both clouds need colors (luminance channel)");
    if (cfg.p2d_k < 4) throw std::invalid_argument("p2d: k_neighbors must be >= 4");
    if (cfg.p2d_k > ref.size() || cfg.p2d_k > dist.size())
        throw std::invalid_argument("p2d: k_neighbors exceeds cloud size");

    const std::vector<double> luma_ref = luma_channel(ref, cfg.ycbcr);
    const std::vector<double> luma_dist = luma_channel(dist, cfg.ycbcr);
    const NeighborIndex ref_index(ref);
    const NeighborIndex dist_index(dist);

    const auto fwd = detail::p2d_direction(ref, luma_ref, dist, luma_dist, dist_index, cfg.p2d_k,
                                           cfg.p2d_regularization);
    const auto bwd = detail::p2d_direction(dist, luma_dist, ref, luma_ref, ref_index, cfg.p2d_k,
                                           cfg.p2d_regularization);

    const double geometry = std::max(fwd.geometry, bwd.geometry);
    const double color = std::max(fwd.color, bwd.color);
    const double joint = 0.5 * (geometry + color);

    MetricResult r;
    r.name = "p2d";
    r.polarity = Polarity::higher_better;
    r.value = std::log10(1.0 + 1.0 / joint);
    r.aux = {{"p2d_g", geometry},
             {"p2d_c", color},
             {"jgc", joint},
             {"geometry_ref_to_dist", fwd.geometry},
             {"geometry_dist_to_ref", bwd.geometry},
             {"color_ref_to_dist", fwd.color},
             {"color_dist_to_ref", bwd.color}};
    return r;
}

} // namespace pcqa::metrics
