// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <string>
#include <vector>

#include "pcqa/bench/benchmark.hpp"
#include "pcqa/characterize.hpp"
#include "pcqa/io/csv.hpp"
#include "pcqa/io/json_writer.hpp"
#include "pcqa/manifest.hpp"
#include "pcqa/metrics/common.hpp"

namespace pcqa::bench {

inline void write_metric_result(io::JsonWriter& w, const metrics::MetricResult& r) {
    w.begin_object();
    w.key("name").value(r.name);
    w.key("value").value(r.value);
    w.key("polarity").value(r.polarity == metrics::Polarity::higher_better ? "higher-better"
                                                                           : "lower-better");
    w.key("identical").value(r.identical);
    w.key("aux").begin_object();
    for (const auto& [k, v] : r.aux) w.key(k).value(v);
    w.end_object();
    if (!r.notes.empty()) {
        w.key("notes").begin_array();
        for (const std::string& n : r.notes) w.value(n);
        w.end_array();
    }
    w.end_object();
}

inline std::string metric_report_json(const RunManifest& manifest,
                                      const std::vector<metrics::MetricResult>& results) {
    io::JsonWriter w;
    w.begin_object();
    manifest.write_json(w);
    w.key("metrics").begin_array();
    for (const auto& r : results) write_metric_result(w, r);
    w.end_array();
    w.end_object();
    return std::move(w).str();
}

inline std::string metric_report_csv(const std::vector<metrics::MetricResult>& results) {
    std::string out = "metric,value,polarity,identical\n";
    for (const auto& r : results) {
        out += io::csv_row({r.name, io::json_number(r.value) == "null" ? "inf" : io::json_number(r.value),
                            r.polarity == metrics::Polarity::higher_better ? "higher-better"
                                                                           : "lower-better",
                            r.identical ? "true" : "false"});
    }
    return out;
}

inline void write_content_profile(io::JsonWriter& w, const ContentProfile& p) {
    w.begin_object();
    w.key("sparsity").value(p.sparsity);
    w.key("gamut_volume_pct").value(p.gamut_volume_pct);
    w.key("y_dev").value(p.y_dev);
    w.key("cb_dev").value(p.cb_dev);
    w.key("cr_dev").value(p.cr_dev);
    w.key("gamut_degenerate").value(p.gamut_degenerate);
    w.end_object();
}

inline std::string content_profile_json(const RunManifest& manifest, const ContentProfile& p) {
    io::JsonWriter w;
    w.begin_object();
    manifest.write_json(w);
    w.key("profile");
    write_content_profile(w, p);
    w.end_object();
    return std::move(w).str();
}

inline std::string content_profile_csv(const ContentProfile& p) {
    std::string out = "sparsity,gamut_volume_pct,y_dev,cb_dev,cr_dev,gamut_degenerate\n";
    out += io::csv_row({io::json_number(p.sparsity), io::json_number(p.gamut_volume_pct),
                        io::json_number(p.y_dev), io::json_number(p.cb_dev), io::json_number(p.cr_dev),
                        p.gamut_degenerate ? "true" : "false"});
    return out;
}

inline std::string benchmark_reports_json(const RunManifest& manifest,
                                          const std::vector<BenchmarkReport>& reports) {
    io::JsonWriter w;
    w.begin_object();
    manifest.write_json(w);
    w.key("reports").begin_array();
    for (const BenchmarkReport& r : reports) {
        w.begin_object();
        w.key("metric").value(r.metric_id);
        w.key("evaluation").value(r.evaluation_id);
        w.key("logistic").begin_array();
        for (double b : r.logistic) w.value(b);
        w.end_array();
        w.key("degenerate_fit").value(r.degenerate_fit);
        w.key("pcc").value(r.pcc);
        w.key("srocc").value(r.srocc);
        w.key("rmse").value(r.rmse);
        w.key("outlier_ratio").value(r.outlier_ratio);
        w.key("predictions").begin_object();
        for (std::size_t i = 0; i < r.stimulus_ids.size(); ++i)
            w.key(r.stimulus_ids[i]).value(r.predictions[i]);
        w.end_object();
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return std::move(w).str();
}

inline std::string benchmark_reports_csv(const std::vector<BenchmarkReport>& reports) {
    std::string out = "metric,evaluation,pcc,srocc,rmse,outlier_ratio,beta1,beta2,beta3,beta4,degenerate\n";
    for (const BenchmarkReport& r : reports)
        out += io::csv_row({r.metric_id, r.evaluation_id, io::json_number(r.pcc), io::json_number(r.srocc),
                            io::json_number(r.rmse), io::json_number(r.outlier_ratio),
                            io::json_number(r.logistic[0]), io::json_number(r.logistic[1]),
                            io::json_number(r.logistic[2]), io::json_number(r.logistic[3]),
                            r.degenerate_fit ? "true" : "false"});
    return out;
}

/// Plot-ready rate-distortion table: one row per stimulus with bit rates,
/// MOS/CI when scores are attached, and one column per metric present.
inline std::string rd_table_csv(const std::vector<StimulusRecord>& records) {
    const std::vector<std::string> metric_cols = metrics_present(records);
    std::vector<std::string> header = {"content", "codec",   "rate", "bpp_geom",
                                       "bpp_total", "mos",   "ci95"};
    header.insert(header.end(), metric_cols.begin(), metric_cols.end());
    std::string out = io::csv_row(header);
    for (const StimulusRecord& r : records) {
        std::vector<std::string> row = {r.content,
                                        r.codec,
                                        r.rate,
                                        io::json_number(r.bpp_geometry()),
                                        io::json_number(r.bpp_total()),
                                        r.raw_scores.size() >= 2 ? io::json_number(r.mos) : "",
                                        r.raw_scores.size() >= 2 ? io::json_number(r.ci95) : ""};
        for (const std::string& m : metric_cols) {
            const auto it = r.metric_scores.find(m);
            row.push_back(it == r.metric_scores.end() ? "" : io::json_number(it->second));
        }
        out += io::csv_row(row);
    }
    return out;
}

} // namespace pcqa::bench
