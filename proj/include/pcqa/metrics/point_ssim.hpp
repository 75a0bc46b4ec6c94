// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>

#include "pcqa/metrics/common.hpp"
#include "pcqa/neighbor_index.hpp"

namespace pcqa::metrics {

namespace detail {

/// COV dispersion estimator: population std over mean of the luminance in a
/// K-neighborhood. A constant-zero neighborhood has no dispersion -> 0.
inline double cov_dispersion(const std::vector<double>& luma, const std::vector<Neighbor>& hood) {
    double mean = 0.0;
    for (const Neighbor& nb : hood) mean += luma[nb.index];
    mean /= static_cast<double>(hood.size());
    double ssd = 0.0;
    for (const Neighbor& nb : hood) {
        const double d = luma[nb.index] - mean;
        ssd += d * d;
    }
    const double sd = std::sqrt(ssd / static_cast<double>(hood.size()));
    if (mean <= 1e-12) return 0.0;  // luminance is non-negative, so mean 0 means all zero
    return sd / mean;
}

} // namespace detail

/// Structural-similarity score from the statistical dispersion of luminance
/// over K-neighborhoods. For each distorted point p the feature is compared
/// against the feature at its nearest reference point q via the relative
/// difference |F_X(q) - F_Y(p)| / max(|F_X(q)|, |F_Y(p)|), and per-point
/// scores are pooled by a power mean. 0 = identical; lower is better.
inline MetricResult point_ssim(const PointCloud& ref, const PointCloud& dist,
                               const MetricConfig& cfg = {}) {
    if (!ref.has_colors() || !dist.has_colors())
        throw std::invalid_argument("point_ssim: both clouds need colors");
    if (cfg.k_neighbors < 1 || cfg.k_neighbors > ref.size() || cfg.k_neighbors > dist.size())
        throw std::invalid_argument("point_ssim: k_neighbors out of range");

    const std::vector<double> luma_ref = luma_channel(ref, cfg.ycbcr);
    const std::vector<double> luma_dist = luma_channel(dist, cfg.ycbcr);
    const NeighborIndex ref_index(ref);
    const NeighborIndex dist_index(dist);
    const std::size_t k = cfg.k_neighbors;

    // Features at reference points are reused across matches; compute lazily.
    std::vector<double> ref_feature(ref.size(), -1.0);
    std::vector<bool> ref_ready(ref.size(), false);

    double pooled = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const double fy = detail::cov_dispersion(luma_dist, dist_index.k_nearest(dist.positions[i], k));
        const std::size_t q = ref_index.nearest(dist.positions[i]).index;
        if (!ref_ready[q]) {
            ref_feature[q] = detail::cov_dispersion(luma_ref, ref_index.k_nearest(ref.positions[q], k));
            ref_ready[q] = true;
        }
        const double fx = ref_feature[q];
        const double denom = std::max(std::abs(fx), std::abs(fy));
        const double s = denom > 0.0 ? std::abs(fx - fy) / denom : 0.0;
        pooled += std::pow(s, cfg.pointssim_pooling_exponent);
    }
    MetricResult r;
    r.name = "point_ssim";
    r.polarity = Polarity::lower_better;
    r.value = pooled / static_cast<double>(dist.size());
    r.identical = r.value == 0.0;
    r.aux = {{"k", static_cast<double>(k)}, {"pooling_exponent", cfg.pointssim_pooling_exponent}};
    return r;
}

} // namespace pcqa::metrics
