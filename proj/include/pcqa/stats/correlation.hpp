// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pcqa/stats/descriptive.hpp"

namespace pcqa::stats {

/// Pearson linear correlation. Throws when either vector has zero variance.
inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("pearson: need two equal-length vectors of >= 2 values");
    const double ma = mean(a), mb = mean(b);
    double cova = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cova += (a[i] - ma) * (b[i] - mb);
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
    }
    if (va == 0.0 || vb == 0.0)
        throw std::invalid_argument("pearson: correlation undefined for zero-variance input");
    // Exactly collinear inputs (identical or exactly opposite deviations)
    // report +-1 without round-off.
    if (cova * cova == va * vb) return cova > 0.0 ? 1.0 : -1.0;
    return cova / std::sqrt(va * vb);
}

/// Spearman rank-order correlation with average ranks for ties.
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    return pearson(average_ranks(a), average_ranks(b));
}

inline double rmse(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("rmse: need two equal-length non-empty vectors");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s / static_cast<double>(a.size()));
}

/// ITU-style correlation report of metric predictions against MOS. The
/// outlier ratio counts stimuli whose absolute error exceeds that stimulus's
/// own 95% confidence interval.
struct CorrelationReport {
    double pcc = 0.0;
    double srocc = 0.0;
    double rmse = 0.0;
    double outlier_ratio = 0.0;
};

inline CorrelationReport correlation_report(const std::vector<double>& predictions,
                                            const std::vector<double>& mos,
                                            const std::vector<double>& ci95) {
    if (predictions.size() != mos.size() || mos.size() != ci95.size() || mos.size() < 3)
        throw std::invalid_argument("correlation_report: need three equal-length vectors of >= 3");
    CorrelationReport r;
    r.pcc = pearson(predictions, mos);
    r.srocc = spearman(predictions, mos);
    r.rmse = rmse(predictions, mos);
    std::size_t outliers = 0;
    for (std::size_t i = 0; i < mos.size(); ++i)
        if (std::abs(predictions[i] - mos[i]) > ci95[i]) ++outliers;
    r.outlier_ratio = static_cast<double>(outliers) / static_cast<double>(mos.size());
    return r;
}

/// OLS line b ~ slope * a + intercept plus the correlation suite of the
/// fitted predictions against b. Callers fitting MOS against MOS (the
/// cross-evaluation comparison) normalize the scores to [0,1] first.
struct LinearFitReport {
    double slope = 0.0;
    double intercept = 0.0;
    CorrelationReport correlation;
};

inline LinearFitReport linear_fit_compare(const std::vector<double>& a, const std::vector<double>& b,
                                          const std::vector<double>& ci95_b) {
    if (a.size() != b.size() || a.size() < 3)
        throw std::invalid_argument("linear_fit_compare: need equal-length vectors of >= 3");
    const double ma = mean(a), mb = mean(b);
    double cova = 0.0, va = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cova += (a[i] - ma) * (b[i] - mb);
        va += (a[i] - ma) * (a[i] - ma);
    }
    if (va == 0.0) throw std::invalid_argument("linear_fit_compare: zero variance in the regressor");
    LinearFitReport r;
    r.slope = cova / va;
    r.intercept = mb - r.slope * ma;
    std::vector<double> pred(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) pred[i] = r.slope * a[i] + r.intercept;
    r.correlation = correlation_report(pred, b, ci95_b);
    return r;
}

inline LinearFitReport linear_fit_compare(const std::vector<double>& a, const std::vector<double>& b) {
    return linear_fit_compare(a, b, std::vector<double>(a.size(), 0.0));
}

} // namespace pcqa::stats
