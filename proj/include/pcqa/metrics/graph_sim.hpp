// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pcqa/characterize.hpp"
#include "pcqa/metrics/common.hpp"
#include "pcqa/neighbor_index.hpp"

namespace pcqa::metrics {

namespace detail {

/// Per-point high-pass response on the k-NN graph with Gaussian edge weights:
/// the norm of the weighted coordinate Laplacian at each point. The Laplacian
/// annihilates constants, so the responses are rigid-invariant.
inline std::vector<double> highpass_response(const PointCloud& cloud, const NeighborIndex& index,
                                             std::size_t knn) {
    const std::size_t k = std::min(knn, cloud.size() - 1);
    // Edge-length scale: mean distance over all graph edges.
    double scale = 0.0;
    std::vector<std::vector<Neighbor>> hoods(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto hood = index.k_nearest(cloud.positions[i], k + 1);
        std::erase_if(hood, [&](const Neighbor& nb) { return nb.index == i; });
        if (hood.size() > k) hood.resize(k);
        for (const Neighbor& nb : hood) scale += nb.distance;
        hoods[i] = std::move(hood);
    }
    scale /= static_cast<double>(cloud.size() * k);
    const double two_sigma_sq = 2.0 * scale * scale;

    std::vector<double> response(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        Vec3 acc{};
        for (const Neighbor& nb : hoods[i]) {
            const double w = two_sigma_sq > 0.0 ? std::exp(-nb.distance * nb.distance / two_sigma_sq) : 1.0;
            acc += (cloud.positions[i] - cloud.positions[nb.index]) * w;
        }
        response[i] = norm(acc);
    }
    return response;
}

struct GradientMoments {
    double mass = 0.0;      // Gaussian-weighted gradient sum
    double mean = 0.0;      // unweighted gradient mean
    double variance = 0.0;  // weighted variance about the weighted mean
    std::vector<double> gradients;  // per-neighbor |channel difference|, for pairing
};

/// Color-gradient moments of the local graph around a keypoint: per neighbor,
/// the absolute channel difference to the keypoint's color, with
/// Euclidean-distance Gaussian weights (sigma = radius / 2).
inline GradientMoments local_moments(const std::vector<double>& channel, const PointCloud& cloud,
                                     const NeighborIndex& index, Vec3 key, double radius) {
    GradientMoments m;
    auto hood = index.radius(key, radius);
    if (hood.empty()) return m;
    const std::size_t center = hood.front().index;  // nearest point plays the keypoint role
    const double center_val = channel[center];
    const double sigma = radius / 2.0;
    const double two_sigma_sq = 2.0 * sigma * sigma;

    double wsum = 0.0, wmean = 0.0;
    std::vector<double> weights;
    for (const Neighbor& nb : hood) {
        if (nb.index == center) continue;
        const double g = std::abs(channel[nb.index] - center_val);
        const double w = std::exp(-nb.distance * nb.distance / two_sigma_sq);
        m.gradients.push_back(g);
        weights.push_back(w);
        m.mass += w * g;
        m.mean += g;
        wsum += w;
    }
    if (m.gradients.empty()) return m;
    m.mean /= static_cast<double>(m.gradients.size());
    wmean = wsum > 0.0 ? m.mass / wsum : 0.0;
    for (std::size_t i = 0; i < m.gradients.size(); ++i)
        m.variance += weights[i] * (m.gradients[i] - wmean) * (m.gradients[i] - wmean);
    if (wsum > 0.0) m.variance /= wsum;
    return m;
}

/// SSIM-style similarity of two moment sets; rank-paired covariance over the
/// sorted gradient lists truncated to the shorter one.
inline double moment_similarity(const GradientMoments& a, const GradientMoments& b, double c) {
    const double s_mass = (2.0 * a.mass * b.mass + c) / (a.mass * a.mass + b.mass * b.mass + c);
    const double s_mean = (2.0 * a.mean * b.mean + c) / (a.mean * a.mean + b.mean * b.mean + c);
    const double sd_a = std::sqrt(a.variance), sd_b = std::sqrt(b.variance);
    const double s_var = (2.0 * sd_a * sd_b + c) / (a.variance + b.variance + c);

    std::vector<double> ga = a.gradients, gb = b.gradients;
    std::sort(ga.begin(), ga.end(), std::greater<>());
    std::sort(gb.begin(), gb.end(), std::greater<>());
    const std::size_t n = std::min(ga.size(), gb.size());
    ga.resize(n);
    gb.resize(n);
    const double mu_a = std::accumulate(ga.begin(), ga.end(), 0.0) / static_cast<double>(n);
    const double mu_b = std::accumulate(gb.begin(), gb.end(), 0.0) / static_cast<double>(n);
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (ga[i] - mu_a) * (gb[i] - mu_b);
        va += (ga[i] - mu_a) * (ga[i] - mu_a);
        vb += (gb[i] - mu_b) * (gb[i] - mu_b);
    }
    cov /= static_cast<double>(n);
    va /= static_cast<double>(n);
    vb /= static_cast<double>(n);
    const double s_cov = (cov + c) / (std::sqrt(va) * std::sqrt(vb) + c);
    return s_mass * s_mean * s_var * s_cov;
}

} // namespace detail

/// Graph-similarity metric. A keypoint skeleton is resampled from the
/// reference by high-pass graph filtering; each keypoint grows a local graph
/// (radius threshold) in both clouds, color-gradient moments are compared
/// SSIM-style per YCbCr channel, channels are pooled by the configured
/// factors, and keypoint scores are averaged. Identical clouds score 1;
/// higher is better.
inline MetricResult graph_sim(const PointCloud& ref, const PointCloud& dist,
                              const MetricConfig& cfg = {}) {
    if (!ref.has_colors() || !dist.has_colors())
        throw std::invalid_argument("graph_sim: both clouds need colors");
    if (cfg.keypoint_count < 1) throw std::invalid_argument("graph_sim: keypoint_count must be >= 1");
    if (ref.size() < 2 || dist.size() < 2) throw std::invalid_argument("graph_sim: clouds too small");

    const NeighborIndex ref_index(ref);
    const NeighborIndex dist_index(dist);

    // Keypoint skeleton: strongest high-pass responses, ties by index.
    const std::vector<double> response = detail::highpass_response(ref, ref_index, cfg.graph_knn);
    std::vector<std::size_t> order(ref.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return response[a] != response[b] ? response[a] > response[b] : a < b;
    });
    const std::size_t n_keys = std::min(cfg.keypoint_count, ref.size());
    order.resize(n_keys);

    const double radius = cfg.graph_radius ? *cfg.graph_radius : 3.0 * sparsity(ref, ref_index, 20);
    if (!(radius > 0.0)) throw std::invalid_argument("graph_sim: non-positive local graph radius");

    // Per-channel values for both clouds.
    std::array<std::vector<double>, 3> chan_ref, chan_dist;
    for (int c = 0; c < 3; ++c) {
        chan_ref[static_cast<std::size_t>(c)].resize(ref.size());
        chan_dist[static_cast<std::size_t>(c)].resize(dist.size());
    }
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const Ycbcr v = rgb_to_ycbcr(ref.colors[i], cfg.ycbcr);
        chan_ref[0][i] = v.y;
        chan_ref[1][i] = v.cb;
        chan_ref[2][i] = v.cr;
    }
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const Ycbcr v = rgb_to_ycbcr(dist.colors[i], cfg.ycbcr);
        chan_dist[0][i] = v.y;
        chan_dist[1][i] = v.cb;
        chan_dist[2][i] = v.cr;
    }

    const double gamma_total = cfg.graph_channel_pooling[0] + cfg.graph_channel_pooling[1] +
                               cfg.graph_channel_pooling[2];
    if (!(gamma_total > 0.0)) throw std::invalid_argument("graph_sim: channel pooling must sum > 0");

    double total = 0.0;
    std::size_t used = 0, skipped = 0;
    for (const std::size_t key_idx : order) {
        const Vec3 key = ref.positions[key_idx];
        double pooled = 0.0;
        bool ok = true;
        for (std::size_t c = 0; c < 3; ++c) {
            const auto ma = detail::local_moments(chan_ref[c], ref, ref_index, key, radius);
            const auto mb = detail::local_moments(chan_dist[c], dist, dist_index, key, radius);
            if (ma.gradients.empty() || mb.gradients.empty()) {
                ok = false;
                break;
            }
            pooled += cfg.graph_channel_pooling[c] *
                      std::abs(detail::moment_similarity(ma, mb, cfg.graph_stabilizer));
        }
        if (!ok) {
            ++skipped;
            continue;
        }
        total += pooled / gamma_total;
        ++used;
    }
    if (used == 0)
        throw std::runtime_error("graph_sim: every keypoint had an empty local graph (radius " +
                                 std::to_string(radius) + " too small)");

    MetricResult r;
    r.name = "graph_sim";
    r.polarity = Polarity::higher_better;
    r.value = total / static_cast<double>(used);
    r.identical = std::abs(r.value - 1.0) < 1e-12;
    r.aux = {{"keypoints_used", static_cast<double>(used)},
             {"keypoints_skipped", static_cast<double>(skipped)},
             {"local_graph_radius", radius}};
    return r;
}

} // namespace pcqa::metrics
