// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "pcqa/bench/records.hpp"
#include "pcqa/stats/correlation.hpp"
#include "pcqa/stats/kruskal.hpp"
#include "pcqa/stats/logistic.hpp"

namespace pcqa::bench {

/// Fitted logistic mapping of one metric to MOS plus the ITU-style
/// correlation figures for one evaluation.
struct BenchmarkReport {
    std::string metric_id;
    std::string evaluation_id;
    std::array<double, 4> logistic{};
    bool degenerate_fit = false;
    std::vector<std::string> stimulus_ids;
    std::vector<double> predictions;
    double pcc = 0.0;
    double srocc = 0.0;
    double rmse = 0.0;
    double outlier_ratio = 0.0;
};

/// Logistic metric-to-MOS fit followed by the correlation report, over the
/// records that carry both the metric value and subjective scores.
inline BenchmarkReport benchmark_metric(const std::vector<StimulusRecord>& records,
                                        const std::string& metric_id,
                                        const std::string& evaluation_id) {
    std::vector<double> objective, mos, ci;
    std::vector<std::string> ids;
    for (const StimulusRecord& r : records) {
        const auto it = r.metric_scores.find(metric_id);
        if (it == r.metric_scores.end() || r.raw_scores.size() < 2) continue;
        objective.push_back(it->second);
        mos.push_back(r.mos);
        ci.push_back(r.ci95);
        ids.push_back(r.stimulus_id);
    }
    if (objective.size() < 5)
        throw std::invalid_argument("benchmark: metric '" + metric_id + "' has " +
                                    std::to_string(objective.size()) +
                                    " scored stimuli, need at least 5");
    const stats::LogisticFit fit = stats::fit_logistic(objective, mos);
    const stats::CorrelationReport corr = stats::correlation_report(fit.predictions, mos, ci);
    BenchmarkReport report;
    report.metric_id = metric_id;
    report.evaluation_id = evaluation_id;
    report.logistic = fit.beta;
    report.degenerate_fit = fit.degenerate;
    report.stimulus_ids = std::move(ids);
    report.predictions = fit.predictions;
    report.pcc = corr.pcc;
    report.srocc = corr.srocc;
    report.rmse = corr.rmse;
    report.outlier_ratio = corr.outlier_ratio;
    return report;
}

inline std::vector<std::string> metrics_present(const std::vector<StimulusRecord>& records) {
    std::set<std::string> names;
    for (const StimulusRecord& r : records)
        for (const auto& [name, value] : r.metric_scores) names.insert(name);
    return {names.begin(), names.end()};
}

/// Cross-evaluation comparison of two MOS vectors over the same stimuli:
/// scores are normalized from the 1..5 scale to [0,1], B is regressed on A,
/// the correlation suite runs on the fitted predictions, and a Kruskal-Wallis
/// omnibus test over the two raw score pools quantifies the difference.
struct EvaluationComparison {
    stats::LinearFitReport fit;
    stats::KruskalResult kruskal;
    std::size_t paired_stimuli = 0;
};

inline EvaluationComparison compare_evaluations(const std::vector<StimulusRecord>& eval_a,
                                                const std::vector<StimulusRecord>& eval_b) {
    std::map<std::string, const StimulusRecord*> b_by_id;
    for (const StimulusRecord& r : eval_b)
        if (r.raw_scores.size() >= 2) b_by_id[r.stimulus_id] = &r;
    std::vector<double> a_norm, b_norm, ci_b;
    for (const StimulusRecord& r : eval_a) {
        if (r.raw_scores.size() < 2) continue;
        const auto it = b_by_id.find(r.stimulus_id);
        if (it == b_by_id.end()) continue;
        a_norm.push_back((r.mos - 1.0) / 4.0);
        b_norm.push_back((it->second->mos - 1.0) / 4.0);
        ci_b.push_back(it->second->ci95 / 4.0);
    }
    EvaluationComparison out;
    out.paired_stimuli = a_norm.size();
    out.fit = stats::linear_fit_compare(a_norm, b_norm, ci_b);

    std::vector<double> pool_a, pool_b;
    for (const StimulusRecord& r : eval_a)
        for (int s : r.raw_scores) pool_a.push_back(static_cast<double>(s));
    for (const StimulusRecord& r : eval_b)
        for (int s : r.raw_scores) pool_b.push_back(static_cast<double>(s));
    out.kruskal = stats::kruskal_wallis({pool_a, pool_b});
    return out;
}

} // namespace pcqa::bench
