// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>

#include "pcqa/metrics/common.hpp"
#include "pcqa/neighbor_index.hpp"

namespace pcqa::metrics {

namespace detail {

/// Mean squared nearest-neighbor error from every point of `src` into `tgt`.
/// With `target_normals` set, the error vector is projected onto the normal
/// of the matched target point first (point-to-plane).
inline double one_way_mse(const PointCloud& src, const PointCloud& tgt, const NeighborIndex& tgt_index,
                          const std::vector<Vec3>* target_normals) {
    double sse = 0.0;
    for (const Vec3& p : src.positions) {
        const Neighbor nn = tgt_index.nearest(p);
        const Vec3 err = p - tgt.positions[nn.index];
        if (target_normals) {
            const double proj = dot(err, (*target_normals)[nn.index]);
            sse += proj * proj;
        } else {
            sse += squared_norm(err);
        }
    }
    return sse / static_cast<double>(src.size());
}

inline MetricResult psnr_result(std::string name, double mse_fwd, double mse_bwd, double peak,
                                bool symmetric) {
    const double mse = symmetric ? std::max(mse_fwd, mse_bwd) : mse_fwd;
    MetricResult r;
    r.name = std::move(name);
    r.polarity = Polarity::higher_better;
    r.aux = {{"mse_dist_to_ref", mse_fwd}, {"mse_ref_to_dist", mse_bwd}, {"mse", mse}, {"peak", peak}};
    if (mse == 0.0) {
        r.identical = true;
        r.value = kInfinity;
    } else {
        r.value = 10.0 * std::log10(peak * peak / mse);
    }
    return r;
}

} // namespace detail

/// Point-to-point geometry PSNR. Forward direction matches every distorted
/// point to its nearest reference point; the symmetric mode takes the worse
/// of the two directional MSEs before the log.
inline MetricResult d1_psnr(const PointCloud& ref, const PointCloud& dist, const MetricConfig& cfg = {}) {
    if (ref.empty() || dist.empty()) throw std::invalid_argument("d1_psnr: empty cloud");
    const double peak = resolve_peak(ref, cfg);
    const NeighborIndex ref_index(ref);
    const NeighborIndex dist_index(dist);
    const double fwd = detail::one_way_mse(dist, ref, ref_index, nullptr);
    const double bwd = detail::one_way_mse(ref, dist, dist_index, nullptr);
    return detail::psnr_result("d1_psnr", fwd, bwd, peak, cfg.symmetric);
}

/// Point-to-plane geometry PSNR: the error vector is projected onto the
/// matched point's surface normal. Each direction uses the normals of the
/// cloud being searched into, so the symmetric mode needs (or estimates)
/// normals on both clouds.
inline MetricResult d2_psnr(const PointCloud& ref, const PointCloud& dist, const MetricConfig& cfg = {}) {
    if (ref.empty() || dist.empty()) throw std::invalid_argument("d2_psnr: empty cloud");
    const double peak = resolve_peak(ref, cfg);
    const PointCloud ref_n = ensure_normals(ref, cfg);
    const NeighborIndex ref_index(ref_n);
    const double fwd = detail::one_way_mse(dist, ref_n, ref_index, &ref_n.normals);
    double bwd = 0.0;
    if (cfg.symmetric) {
        const PointCloud dist_n = ensure_normals(dist, cfg);
        const NeighborIndex dist_index(dist_n);
        bwd = detail::one_way_mse(ref_n, dist_n, dist_index, &dist_n.normals);
    }
    return detail::psnr_result("d2_psnr", fwd, bwd, peak, cfg.symmetric);
}

} // namespace pcqa::metrics
