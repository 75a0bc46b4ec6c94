// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <algorithm>
#include <cmath>

#include "pcqa/metrics/common.hpp"
#include "pcqa/neighbor_index.hpp"
#include "pcqa/normals.hpp"

namespace pcqa::metrics {

namespace detail {

// Stabilizers of the feature formulas, from the reference formulation.
struct PcqmConstants {
    double curvature = 1.0;
    double lightness = 0.002;
    double contrast = 0.1;
    double structure = 0.1;
    double chroma = 0.002;
    double hue = 0.008;
};

inline double quadric_mean_curvature(const std::vector<Vec3>& pts, const std::vector<Neighbor>& hood,
                                     Vec3 query) {
    if (hood.size() < 6) return 0.0;  // flat fallback for degenerate neighborhoods
    std::vector<std::size_t> idx;
    idx.reserve(hood.size());
    for (const Neighbor& nb : hood) idx.push_back(nb.index);
    return fit_local_quadric(pts, idx, query).mean_curvature();
}

/// Projection of `query` onto the quadric of its k-neighborhood in the target
/// cloud, clamped to the nearest target point when the quadric lands farther
/// away. The clamp also makes identical inputs project onto themselves.
inline Vec3 clamped_projection(const std::vector<Vec3>& pts, const NeighborIndex& index, Vec3 query,
                               std::size_t k) {
    const auto hood = index.k_nearest(query, std::min(k, index.size()));
    const Vec3 nearest = pts[hood.front().index];
    if (hood.size() < 6) return nearest;
    std::vector<std::size_t> idx;
    idx.reserve(hood.size());
    for (const Neighbor& nb : hood) idx.push_back(nb.index);
    const Vec3 proj = fit_local_quadric(pts, idx, query).projected_origin();
    return distance(query, proj) <= distance(query, nearest) ? proj : nearest;
}

struct WeightedStats {
    double mean_a = 0.0, mean_b = 0.0;  // Gaussian-weighted means (own / projected weights)
    double sd_a = 0.0, sd_b = 0.0;      // weighted standard deviations
    double cov_w = 0.0;                 // weighted covariance (own weights)
};

} // namespace detail

/// Per-feature means (all distance-valued, 0 = identical):
///   f1..f3 geometry (curvature lightness / contrast / structure),
///   f4..f6 color lightness / contrast / structure on L*,
///   f7 chroma, f8 hue.
struct PcqmFeatures {
    std::array<double, 8> f{};
};

inline PcqmFeatures pcqm_features(const PointCloud& ref, const PointCloud& dist,
                                  const MetricConfig& cfg) {
    if (!ref.has_colors() || !dist.has_colors())
        throw std::invalid_argument("pcqm: both clouds need colors");
    const detail::PcqmConstants k{};

    const NeighborIndex ref_index(ref);
    const NeighborIndex dist_index(dist);
    const double scale = centroid_sphere_diameter(ref);
    if (!(scale > 0.0)) throw std::invalid_argument("pcqm: degenerate reference cloud");
    const double radius = cfg.pcqm_radius_rel * scale;
    const double stat_radius = radius * cfg.pcqm_radius_factor;
    const std::size_t n = ref.size();

    // Pass 1: per-point curvatures (own and other surface), projections onto
    // the distorted surface, and CIELAB attributes (own color vs nearest
    // distorted color).
    std::vector<double> curv_own(n), curv_other(n);
    std::vector<Vec3> projected(n);
    std::vector<double> l_own(n), l_other(n), chroma_own(n), chroma_other(n), hue_delta(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 p = ref.positions[i];
        curv_own[i] = std::abs(detail::quadric_mean_curvature(ref.positions, ref_index.radius(p, radius), p)) * scale;
        curv_other[i] = std::abs(detail::quadric_mean_curvature(dist.positions, dist_index.radius(p, radius), p)) * scale;
        projected[i] = detail::clamped_projection(dist.positions, dist_index, p, cfg.pcqm_projection_k);

        const Lab own = rgb_to_lab(ref.colors[i]);
        const Lab other = rgb_to_lab(dist.colors[dist_index.nearest(p).index]);
        l_own[i] = own.l;
        l_other[i] = other.l;
        chroma_own[i] = lab_chroma(own);
        chroma_other[i] = lab_chroma(other);
        const double dh2 = (own.a - other.a) * (own.a - other.a) +
                           (own.b - other.b) * (own.b - other.b) -
                           (chroma_own[i] - chroma_other[i]) * (chroma_own[i] - chroma_other[i]);
        hue_delta[i] = dh2 > 0.0 ? std::sqrt(dh2) : 0.0;
    }

    // Pass 2: neighborhood statistics with Gaussian weights; the projected
    // positions supply the second weight set.
    const double sigma = stat_radius / 2.0;
    const double two_sigma_sq = 2.0 * sigma * sigma;
    double sum[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    std::vector<std::size_t> hood_idx;
    std::vector<double> w_own, w_proj;
    for (std::size_t i = 0; i < n; ++i) {
        const auto hood = ref_index.radius(ref.positions[i], stat_radius);
        hood_idx.clear();
        w_own.clear();
        w_proj.clear();
        double wsum_own = 0.0, wsum_proj = 0.0;
        for (const Neighbor& nb : hood) {
            const double d_proj = distance(projected[i], projected[nb.index]);
            const double wo = std::exp(-nb.distance * nb.distance / two_sigma_sq);
            const double wp = std::exp(-d_proj * d_proj / two_sigma_sq);
            hood_idx.push_back(nb.index);
            w_own.push_back(wo);
            w_proj.push_back(wp);
            wsum_own += wo;
            wsum_proj += wp;
        }
        const double m = static_cast<double>(hood_idx.size());

        // weighted mean/sd/cov over a data pair (own values a, other values b)
        auto weighted = [&](const std::vector<double>& a, const std::vector<double>& b) {
            detail::WeightedStats s;
            for (std::size_t j = 0; j < hood_idx.size(); ++j) {
                s.mean_a += a[hood_idx[j]] * w_own[j];
                s.mean_b += b[hood_idx[j]] * w_proj[j];
            }
            s.mean_a /= wsum_own;
            s.mean_b /= wsum_proj;
            double va = 0.0, vb = 0.0, cw = 0.0;
            for (std::size_t j = 0; j < hood_idx.size(); ++j) {
                const double da = a[hood_idx[j]] - s.mean_a;
                const double db = b[hood_idx[j]] - s.mean_b;
                va += da * da * w_own[j];
                vb += db * db * w_proj[j];
                cw += da * db * w_own[j];
            }
            s.sd_a = std::sqrt(std::max(0.0, va / wsum_own));
            s.sd_b = std::sqrt(std::max(0.0, vb / wsum_proj));
            s.cov_w = cw / wsum_own;
            return s;
        };

        // f1..f3: curvature comparison
        {
            const auto s = weighted(curv_own, curv_other);
            sum[0] += std::abs(s.mean_a - s.mean_b) / (std::max(s.mean_a, s.mean_b) + k.curvature);
            sum[1] += std::abs(s.sd_a - s.sd_b) / (std::max(s.sd_a, s.sd_b) + k.curvature);
            const double structure =
                std::abs(s.sd_a * s.sd_b - s.cov_w) / (s.sd_a * s.sd_b + k.curvature);
            sum[2] += std::min(structure, 1.0);
        }
        // f4: lightness similarity 1/(c (mu_a - mu_b)^2 + 1)
        // f5: contrast, f6: structure on L* (unweighted moments)
        {
            const auto s = weighted(l_own, l_other);
            sum[3] += 1.0 - 1.0 / (k.lightness * (s.mean_a - s.mean_b) * (s.mean_a - s.mean_b) + 1.0);
            const double var_a = s.sd_a * s.sd_a, var_b = s.sd_b * s.sd_b;
            sum[4] += 1.0 - (2.0 * s.sd_a * s.sd_b + k.contrast) / (var_a + var_b + k.contrast);

            double ma = 0.0, mb = 0.0;
            for (std::size_t j : hood_idx) {
                ma += l_own[j];
                mb += l_other[j];
            }
            ma /= m;
            mb /= m;
            double va = 0.0, vb = 0.0, cov = 0.0;
            for (std::size_t j : hood_idx) {
                va += (l_own[j] - ma) * (l_own[j] - ma);
                vb += (l_other[j] - mb) * (l_other[j] - mb);
                cov += (l_own[j] - ma) * (l_other[j] - mb);
            }
            va /= m;
            vb /= m;
            cov /= m;
            sum[5] += 1.0 - (cov + k.structure) / (std::sqrt(va) * std::sqrt(vb) + k.structure);
        }
        // f7 chroma, f8 hue: lightness-style similarity on the weighted means
        {
            const auto s = weighted(chroma_own, chroma_other);
            sum[6] += 1.0 - 1.0 / (k.chroma * (s.mean_a - s.mean_b) * (s.mean_a - s.mean_b) + 1.0);
        }
        {
            double mu_hue = 0.0;
            for (std::size_t j = 0; j < hood_idx.size(); ++j) mu_hue += hue_delta[hood_idx[j]] * w_own[j];
            mu_hue /= wsum_own;
            sum[7] += 1.0 - 1.0 / (k.hue * mu_hue * mu_hue + 1.0);
        }
    }

    PcqmFeatures out;
    for (int i = 0; i < 8; ++i) out.f[static_cast<std::size_t>(i)] = sum[i] / static_cast<double>(n);
    return out;
}

/// Projection-based joint geometry/color metric: every reference point is
/// compared against the quadric surface and colors of the distorted cloud;
/// the score is the configured weighted sum of the eight feature means.
/// 0 = identical; lower is better.
inline MetricResult pcqm(const PointCloud& ref, const PointCloud& dist, const MetricConfig& cfg = {}) {
    if (cfg.pcqm_weights.size() != 8)
        throw std::invalid_argument("pcqm: pcqm_weights must have 8 entries, got " +
                                    std::to_string(cfg.pcqm_weights.size()));
    const PcqmFeatures feats = pcqm_features(ref, dist, cfg);
    MetricResult r;
    r.name = "pcqm";
    r.polarity = Polarity::lower_better;
    static const char* kNames[8] = {"curvature_lightness", "curvature_contrast", "curvature_structure",
                                    "color_lightness", "color_contrast", "color_structure",
                                    "chroma", "hue"};
    double score = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        score += cfg.pcqm_weights[i] * feats.f[i];
        r.aux.emplace_back(kNames[i], feats.f[i]);
    }
    r.value = score;
    r.identical = score == 0.0;
    r.notes.push_back("color_space: cielab-d65");
    return r;
}

} // namespace pcqa::metrics
