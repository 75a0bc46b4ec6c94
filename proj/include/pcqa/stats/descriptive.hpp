// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace pcqa::stats {

inline double mean(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("mean of empty vector");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

/// Population standard deviation (two-pass).
inline double stddev_population(const std::vector<double>& v) {
    const double m = mean(v);
    double ssd = 0.0;
    for (double x : v) ssd += (x - m) * (x - m);
    return std::sqrt(ssd / static_cast<double>(v.size()));
}

/// Sample standard deviation (n-1 denominator).
inline double stddev_sample(const std::vector<double>& v) {
    if (v.size() < 2) throw std::invalid_argument("sample stddev needs >= 2 values");
    const double m = mean(v);
    double ssd = 0.0;
    for (double x : v) ssd += (x - m) * (x - m);
    return std::sqrt(ssd / static_cast<double>(v.size() - 1));
}

inline double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of empty vector");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Average ranks (1-based); tied values share the mean of their rank span.
inline std::vector<double> average_ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double shared = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

/// Occurrence histogram and its scalar summaries. Binned over [lo, hi] with
/// the upper edge inclusive; a zero-width range puts everything in bin 0.
struct HistogramStats {
    double mode = 0.0;      // center of the most populated bin (ties: lowest)
    double entropy = 0.0;   // Shannon entropy in bits of the normalized histogram
    double energy = 0.0;    // sum of squared normalized bin masses
    double sparsity = 0.0;  // fraction of empty bins
};

inline HistogramStats histogram_stats(const std::vector<double>& v, std::size_t bins) {
    if (v.empty()) throw std::invalid_argument("histogram of empty vector");
    if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
    const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
    const double lo = *lo_it, hi = *hi_it;
    std::vector<double> count(bins, 0.0);
    if (lo == hi) {
        count[0] = static_cast<double>(v.size());
    } else {
        const double width = (hi - lo) / static_cast<double>(bins);
        for (double x : v) {
            std::size_t b = static_cast<std::size_t>((x - lo) / width);
            if (b >= bins) b = bins - 1;
            count[b] += 1.0;
        }
    }
    HistogramStats out;
    std::size_t best = 0;
    std::size_t empty = 0;
    const double n = static_cast<double>(v.size());
    for (std::size_t b = 0; b < bins; ++b) {
        if (count[b] > count[best]) best = b;
        if (count[b] == 0.0) ++empty;
        const double q = count[b] / n;
        if (q > 0.0) out.entropy -= q * std::log2(q);
        out.energy += q * q;
    }
    const double width = lo == hi ? 0.0 : (hi - lo) / static_cast<double>(bins);
    out.mode = lo == hi ? lo : lo + (static_cast<double>(best) + 0.5) * width;
    out.sparsity = static_cast<double>(empty) / static_cast<double>(bins);
    return out;
}

} // namespace pcqa::stats
