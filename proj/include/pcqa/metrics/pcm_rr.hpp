// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <array>
#include <cmath>

#include "pcqa/metrics/common.hpp"
#include "pcqa/neighbor_index.hpp"
#include "pcqa/stats/descriptive.hpp"

namespace pcqa::metrics {

namespace detail {

/// Seven summary statistics of a sample set: mean / std / median from the
/// samples, mode / entropy / energy / sparsity from its occurrence histogram.
inline std::array<double, 7> seven_stats(const std::vector<double>& samples, std::size_t bins) {
    const stats::HistogramStats h = stats::histogram_stats(samples, bins);
    return {stats::mean(samples), stats::stddev_population(samples), stats::median(samples),
            h.mode, h.entropy, h.energy, h.sparsity};
}

/// Angular similarity between (unsigned) normals: 1 - 2*acos(|n1.n2|)/pi.
inline double angular_similarity(Vec3 a, Vec3 b) {
    const double c = std::clamp(std::abs(dot(a, b)), 0.0, 1.0);
    return 1.0 - 2.0 * std::acos(c) / M_PI;
}

} // namespace detail

/// The 21-element reduced feature vector behind the PCM-RR score. Geometry
/// uses radial distances from the centroid (rigid-invariant), luminance the
/// normalized Y channel, and the normal block the angular-similarity
/// distribution of each point's normal against its K-neighborhood:
/// mean of means, mean of stds, mean of medians, std of means, then
/// entropy / energy / sparsity of the pooled similarity histogram.
struct PcmRrFeatures {
    std::array<double, 7> geometry{};
    std::array<double, 7> luminance{};
    std::array<double, 7> normals{};

    std::array<double, 21> flat() const {
        std::array<double, 21> out{};
        for (int i = 0; i < 7; ++i) {
            out[static_cast<std::size_t>(i)] = geometry[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(i) + 7] = luminance[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(i) + 14] = normals[static_cast<std::size_t>(i)];
        }
        return out;
    }
};

inline PcmRrFeatures pcm_rr_features(const PointCloud& cloud_in, const MetricConfig& cfg) {
    if (!cloud_in.has_colors()) throw std::invalid_argument("pcm_rr: cloud needs colors");
    const PointCloud cloud = ensure_normals(cloud_in, cfg);

    PcmRrFeatures f;
    const Vec3 center = centroid(cloud);
    std::vector<double> radial(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) radial[i] = distance(cloud.positions[i], center);
    f.geometry = detail::seven_stats(radial, cfg.pcmrr_bins);

    f.luminance = detail::seven_stats(luma_channel(cloud, cfg.ycbcr), cfg.pcmrr_bins);

    const NeighborIndex index(cloud);
    const std::size_t k = std::min(cfg.k_neighbors, cloud.size() - 1);
    if (k == 0) throw std::invalid_argument("pcm_rr: cloud too small for a neighborhood");
    std::vector<double> mean_per_point, std_per_point, median_per_point, pooled;
    pooled.reserve(cloud.size() * k);
    std::vector<double> sims;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto hood = index.k_nearest(cloud.positions[i], k + 1);
        sims.clear();
        for (const Neighbor& nb : hood) {
            if (nb.index == i) continue;
            if (sims.size() == k) break;
            sims.push_back(detail::angular_similarity(cloud.normals[i], cloud.normals[nb.index]));
        }
        mean_per_point.push_back(stats::mean(sims));
        std_per_point.push_back(stats::stddev_population(sims));
        median_per_point.push_back(stats::median(sims));
        pooled.insert(pooled.end(), sims.begin(), sims.end());
    }
    const stats::HistogramStats h = stats::histogram_stats(pooled, cfg.pcmrr_bins);
    f.normals = {stats::mean(mean_per_point), stats::mean(std_per_point), stats::mean(median_per_point),
                 stats::stddev_population(mean_per_point), h.entropy, h.energy, h.sparsity};
    return f;
}

/// Reduced-reference metric: weighted sum of absolute differences between the
/// two clouds' feature vectors. 0 = identical; lower is better.
inline MetricResult pcm_rr(const PointCloud& ref, const PointCloud& dist, const MetricConfig& cfg = {}) {
    if (cfg.pcmrr_weights.size() != 21)
        throw std::invalid_argument("pcm_rr: pcmrr_weights must have 21 entries, got " +
                                    std::to_string(cfg.pcmrr_weights.size()));
    const auto fr = pcm_rr_features(ref, cfg).flat();
    const auto fd = pcm_rr_features(dist, cfg).flat();
    MetricResult r;
    r.name = "pcm_rr";
    r.polarity = Polarity::lower_better;
    static const char* kNames[21] = {
        "geo_mean", "geo_std", "geo_median", "geo_mode", "geo_entropy", "geo_energy", "geo_sparsity",
        "luma_mean", "luma_std", "luma_median", "luma_mode", "luma_entropy", "luma_energy",
        "luma_sparsity", "norm_mean_of_means", "norm_mean_of_stds", "norm_mean_of_medians",
        "norm_std_of_means", "norm_entropy", "norm_energy", "norm_sparsity"};
    double score = 0.0;
    for (std::size_t i = 0; i < 21; ++i) {
        const double d = std::abs(fr[i] - fd[i]);
        score += cfg.pcmrr_weights[i] * d;
        r.aux.emplace_back(kNames[i], d);
    }
    r.value = score;
    r.identical = score == 0.0;
    return r;
}

} // namespace pcqa::metrics
