// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pcqa/stats/descriptive.hpp"
#include "pcqa/stats/special.hpp"

namespace pcqa::stats {

struct MosResult {
    double mos = 0.0;
    double ci95 = 0.0;
};

/// Mean opinion score with its 95% confidence interval under a Student's
/// t-distribution: t(0.975, n-1) * s / sqrt(n) with sample std s.
inline MosResult mos_with_ci(const std::vector<double>& scores) {
    if (scores.size() < 2) throw std::invalid_argument("mos_with_ci: needs at least 2 scores");
    const double m = mean(scores);
    const double s = stddev_sample(scores);
    const double n = static_cast<double>(scores.size());
    const double t = student_t_quantile(0.975, n - 1.0);
    return {m, t * s / std::sqrt(n)};
}

inline MosResult mos_with_ci(const std::vector<int>& scores) {
    std::vector<double> d(scores.begin(), scores.end());
    return mos_with_ci(d);
}

} // namespace pcqa::stats
