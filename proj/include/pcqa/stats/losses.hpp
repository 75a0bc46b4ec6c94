// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pcqa::stats {

/// Plain binary cross-entropy over voxel occupancies, natural log, mean per
/// sample. Probabilities are clamped to keep the logs finite.
inline double bce(const std::vector<int>& occupancy, const std::vector<double>& probability) {
    if (occupancy.size() != probability.size() || occupancy.empty())
        throw std::invalid_argument("bce: need equal-length non-empty vectors");
    double sum = 0.0;
    for (std::size_t i = 0; i < occupancy.size(); ++i) {
        const double p = std::clamp(probability[i], 1e-12, 1.0 - 1e-12);
        sum += occupancy[i] == 1 ? -std::log(p) : -std::log(1.0 - p);
    }
    return sum / static_cast<double>(occupancy.size());
}

/// Focal variation of the BCE used to balance empty vs occupied voxels:
///   x = 1:  -alpha     * (1-p)^gamma * log(p)
///   x = 0:  -(1-alpha) * p^gamma     * log(1-p)
/// mean over samples. With gamma = 0, alpha = 0.5 this is exactly 0.5 * BCE.
inline double focal_bce(const std::vector<int>& occupancy, const std::vector<double>& probability,
                        double alpha, double gamma) {
    if (occupancy.size() != probability.size() || occupancy.empty())
        throw std::invalid_argument("focal_bce: need equal-length non-empty vectors");
    double sum = 0.0;
    for (std::size_t i = 0; i < occupancy.size(); ++i) {
        const double p = std::clamp(probability[i], 1e-12, 1.0 - 1e-12);
        if (occupancy[i] == 1)
            sum += -alpha * std::pow(1.0 - p, gamma) * std::log(p);
        else
            sum += -(1.0 - alpha) * std::pow(p, gamma) * std::log(1.0 - p);
    }
    return sum / static_cast<double>(occupancy.size());
}

/// Bits per point; geometry-only and total variants are just different bit
/// counts fed through the same division.
inline double bpp(double bits, std::size_t points) {
    if (points < 1) throw std::invalid_argument("bpp: needs at least one point");
    if (bits < 0.0) throw std::invalid_argument("bpp: negative bit count");
    return bits / static_cast<double>(points);
}

} // namespace pcqa::stats
