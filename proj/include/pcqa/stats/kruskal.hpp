// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <stdexcept>
#include <vector>

#include "pcqa/stats/descriptive.hpp"
#include "pcqa/stats/special.hpp"

namespace pcqa::stats {

struct KruskalResult {
    double h = 0.0;
    double p_value = 1.0;
};

/// Kruskal-Wallis one-way analysis of variance on ranks, with tie correction;
/// the p-value comes from the chi-square upper tail with k-1 degrees of
/// freedom. Every observation tied across all groups yields H = 0, p = 1.
inline KruskalResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw std::invalid_argument("kruskal_wallis: need at least 2 groups");
    std::vector<double> all;
    for (const auto& g : groups) {
        if (g.empty()) throw std::invalid_argument("kruskal_wallis: empty group");
        all.insert(all.end(), g.begin(), g.end());
    }
    const double n = static_cast<double>(all.size());
    const std::vector<double> ranks = average_ranks(all);

    double h = 0.0;
    std::size_t offset = 0;
    for (const auto& g : groups) {
        double rank_sum = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) rank_sum += ranks[offset + i];
        h += rank_sum * rank_sum / static_cast<double>(g.size());
        offset += g.size();
    }
    h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);

    // tie correction: 1 - sum(t^3 - t) / (n^3 - n)
    std::vector<double> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    double tie_sum = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_sum += t * t * t - t;
        i = j + 1;
    }
    const double correction = 1.0 - tie_sum / (n * n * n - n);
    if (correction == 0.0) return {0.0, 1.0};  // every observation identical
    h /= correction;
    if (h < 0.0) h = 0.0;  // guard round-off on fully tied data

    const double df = static_cast<double>(groups.size()) - 1.0;
    return {h, chi_square_sf(h, df)};
}

} // namespace pcqa::stats
