// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcqa/io/toml_lite.hpp"
#include "pcqa/metrics/common.hpp"
#include "pcqa/metrics/d1d2.hpp"
#include "pcqa/metrics/graph_sim.hpp"
#include "pcqa/metrics/p2d.hpp"
#include "pcqa/metrics/pcm_rr.hpp"
#include "pcqa/metrics/pcqm.hpp"
#include "pcqa/metrics/point_ssim.hpp"

namespace pcqa::metrics {

inline const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {"d1", "d2", "pssim", "pcqm", "p2d", "pcmrr", "graphsim"};
    return names;
}

inline MetricResult run_metric(const std::string& name, const PointCloud& ref, const PointCloud& dist,
                               const MetricConfig& cfg) {
    if (name == "d1") return d1_psnr(ref, dist, cfg);
    if (name == "d2") return d2_psnr(ref, dist, cfg);
    if (name == "pssim") return point_ssim(ref, dist, cfg);
    if (name == "pcqm") return pcqm(ref, dist, cfg);
    if (name == "p2d") return p2d(ref, dist, cfg);
    if (name == "pcmrr") return pcm_rr(ref, dist, cfg);
    if (name == "graphsim") return graph_sim(ref, dist, cfg);
    throw std::invalid_argument("unknown metric '" + name + "' (expected one of d1, d2, pssim, pcqm, p2d, pcmrr, graphsim)");
}

/// Applies a profile document on top of the built-in defaults. Every field is
/// optional except the weight vectors, which the metrics themselves require.
inline MetricConfig config_from_profile(const io::TomlDocument& doc) {
    MetricConfig cfg;
    auto number = [&](const char* table, const char* key, double& into) {
        if (doc.has(table, key)) into = doc.number(table, key);
    };
    auto count = [&](const char* table, const char* key, std::size_t& into) {
        if (doc.has(table, key)) {
            const double v = doc.number(table, key);
            if (v < 0 || v != std::floor(v))
                throw std::invalid_argument(std::string("profile: ") + table + "." + key +
                                            " must be a non-negative integer");
            into = static_cast<std::size_t>(v);
        }
    };

    if (doc.has("psnr", "peak")) cfg.peak_value = doc.number("psnr", "peak");
    if (doc.has("psnr", "symmetric")) cfg.symmetric = doc.boolean("psnr", "symmetric");
    if (doc.has("color", "ycbcr")) {
        const std::string m = doc.string("color", "ycbcr");
        if (m == "bt709") cfg.ycbcr = YcbcrMatrix::bt709;
        else if (m == "bt601") cfg.ycbcr = YcbcrMatrix::bt601;
        else throw std::invalid_argument("profile: color.ycbcr must be bt709 or bt601");
    }
    number("normals", "radius", cfg.normal_radius);
    if (doc.has("normals", "estimate")) cfg.allow_normal_estimation = doc.boolean("normals", "estimate");

    count("pointssim", "k", cfg.k_neighbors);
    number("pointssim", "pooling_exponent", cfg.pointssim_pooling_exponent);

    count("p2d", "k", cfg.p2d_k);
    number("p2d", "regularization", cfg.p2d_regularization);

    if (doc.has("pcqm", "weights")) cfg.pcqm_weights = doc.array("pcqm", "weights");
    number("pcqm", "radius_rel", cfg.pcqm_radius_rel);
    number("pcqm", "radius_factor", cfg.pcqm_radius_factor);
    count("pcqm", "projection_k", cfg.pcqm_projection_k);

    if (doc.has("pcmrr", "weights")) cfg.pcmrr_weights = doc.array("pcmrr", "weights");
    count("pcmrr", "bins", cfg.pcmrr_bins);

    count("graphsim", "keypoint_count", cfg.keypoint_count);
    count("graphsim", "graph_knn", cfg.graph_knn);
    if (doc.has("graphsim", "radius")) cfg.graph_radius = doc.number("graphsim", "radius");
    if (doc.has("graphsim", "channel_pooling")) {
        const auto v = doc.array("graphsim", "channel_pooling");
        if (v.size() != 3)
            throw std::invalid_argument("profile: graphsim.channel_pooling needs 3 factors");
        cfg.graph_channel_pooling = {v[0], v[1], v[2]};
    }
    number("graphsim", "stabilizer", cfg.graph_stabilizer);
    return cfg;
}

} // namespace pcqa::metrics
