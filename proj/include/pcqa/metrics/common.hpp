// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcqa/color.hpp"
#include "pcqa/normals.hpp"
#include "pcqa/point_cloud.hpp"

namespace pcqa::metrics {

enum class Polarity { higher_better, lower_better };

/// Per-metric parameters. Defaults follow the documented conventions; fields
/// that have no principled default (the PCQM / PCM-RR weight vectors) ship in
/// the profile file instead and must be present there.
struct MetricConfig {
    // shared
    std::size_t k_neighbors = 12;           // PointSSIM / PCM-RR neighborhood size
    std::optional<double> peak_value;       // D1/D2 peak; default = ref bbox diagonal
    bool symmetric = true;                  // D1/D2: max of both directions
    YcbcrMatrix ycbcr = YcbcrMatrix::bt709;
    double normal_radius = 5.0;             // quadric-fitting radius for estimated normals
    bool allow_normal_estimation = true;

    // PointSSIM
    double pointssim_pooling_exponent = 1.0;

    // P2D
    std::size_t p2d_k = 31;
    double p2d_regularization = 1e-9;       // relative diagonal loading of the covariance

    // PCQM (radius values are relative to the intrinsic cloud scale)
    std::vector<double> pcqm_weights;       // 8 features; required
    double pcqm_radius_rel = 0.004;
    double pcqm_radius_factor = 2.0;
    std::size_t pcqm_projection_k = 20;

    // PCM-RR
    std::vector<double> pcmrr_weights;      // 21 features; required
    std::size_t pcmrr_bins = 256;

    // GraphSIM
    std::size_t keypoint_count = 32;
    std::size_t graph_knn = 12;             // high-pass filtering graph degree
    std::optional<double> graph_radius;     // local-graph radius; default 3x sparsity
    std::array<double, 3> graph_channel_pooling = {6.0 / 8.0, 1.0 / 8.0, 1.0 / 8.0};
    double graph_stabilizer = 1e-4;
};

/// A scored outcome. `identical` marks the infinite-PSNR style case where the
/// inputs were indistinguishable to the metric; `value` then carries +inf (or
/// the metric's exact perfect score when that is finite).
struct MetricResult {
    std::string name;
    double value = 0.0;
    Polarity polarity = Polarity::higher_better;
    bool identical = false;
    std::vector<std::pair<std::string, double>> aux;   // per-direction / per-feature breakdown
    std::vector<std::string> notes;

    double aux_value(const std::string& key) const {
        for (const auto& [k, v] : aux)
            if (k == key) return v;
        throw std::out_of_range("metric aux key not found: " + key);
    }
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Default PSNR peak: length of the reference cloud's bounding-box diagonal.
inline double resolve_peak(const PointCloud& ref, const MetricConfig& cfg) {
    if (cfg.peak_value) {
        if (!(*cfg.peak_value > 0.0)) throw std::invalid_argument("peak_value must be positive");
        return *cfg.peak_value;
    }
    return bounding_box(ref).diagonal();
}

/// Normalized luminance channel of a cloud's colors.
inline std::vector<double> luma_channel(const PointCloud& cloud, YcbcrMatrix m) {
    if (!cloud.has_colors()) throw std::invalid_argument("metric requires colors on both clouds");
    std::vector<double> out(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) out[i] = luminance(cloud.colors[i], m);
    return out;
}

/// Cloud with normals guaranteed: pass-through when present, quadric
/// estimation when allowed, error otherwise.
inline PointCloud ensure_normals(const PointCloud& cloud, const MetricConfig& cfg) {
    if (cloud.has_normals()) return cloud;
    if (!cfg.allow_normal_estimation)
        throw std::invalid_argument("cloud has no normals and normal estimation is disabled");
    return estimate_normals(cloud, cfg.normal_radius);
}

} // namespace pcqa::metrics
