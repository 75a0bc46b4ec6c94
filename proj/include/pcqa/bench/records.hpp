// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcqa/io/csv.hpp"
#include "pcqa/stats/losses.hpp"
#include "pcqa/stats/mos.hpp"

namespace pcqa::bench {

/// One codec/content/rate point: bit accounting, raw subjective scores with
/// their MOS/CI summary, and the objective metric scores attached to it.
struct StimulusRecord {
    std::string stimulus_id;
    std::string content;
    std::string codec;
    std::string rate;  // R01..R05
    double geometry_bits = 0.0;
    double texture_bits = 0.0;
    std::size_t points = 0;
    std::vector<int> raw_scores;  // opinion scores, 1..5
    double mos = 0.0;
    double ci95 = 0.0;
    std::map<std::string, double> metric_scores;

    double bpp_geometry() const { return stats::bpp(geometry_bits, points); }
    double bpp_total() const { return stats::bpp(geometry_bits + texture_bits, points); }
};

namespace detail {

inline double to_number(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("csv: non-numeric " + what + " '" + s + "'");
    }
}

} // namespace detail

/// Stimulus manifest schema: stimulus_id, content, codec, rate,
/// geometry_bits, texture_bits, points.
inline std::vector<StimulusRecord> load_stimulus_manifest(const io::CsvTable& t) {
    const int id = t.require_column("stimulus_id");
    const int content = t.require_column("content");
    const int codec = t.require_column("codec");
    const int rate = t.require_column("rate");
    const int gbits = t.require_column("geometry_bits");
    const int tbits = t.require_column("texture_bits");
    const int pts = t.require_column("points");
    std::vector<StimulusRecord> records;
    for (const auto& row : t.rows) {
        StimulusRecord r;
        r.stimulus_id = row[static_cast<std::size_t>(id)];
        r.content = row[static_cast<std::size_t>(content)];
        r.codec = row[static_cast<std::size_t>(codec)];
        r.rate = row[static_cast<std::size_t>(rate)];
        r.geometry_bits = detail::to_number(row[static_cast<std::size_t>(gbits)], "geometry_bits");
        r.texture_bits = detail::to_number(row[static_cast<std::size_t>(tbits)], "texture_bits");
        r.points = static_cast<std::size_t>(detail::to_number(row[static_cast<std::size_t>(pts)], "points"));
        if (r.geometry_bits < 0 || r.texture_bits < 0)
            throw std::invalid_argument("stimulus " + r.stimulus_id + ": negative bit count");
        records.push_back(std::move(r));
    }
    return records;
}

/// Raw-score schema: stimulus_id, subject_id, score (1..5). Scores fold into
/// the matching records as raw lists plus MOS / CI95.
inline void attach_raw_scores(std::vector<StimulusRecord>& records, const io::CsvTable& t) {
    const int id = t.require_column("stimulus_id");
    const int score = t.require_column("score");
    std::map<std::string, StimulusRecord*> by_id;
    for (StimulusRecord& r : records) by_id[r.stimulus_id] = &r;
    for (const auto& row : t.rows) {
        const auto it = by_id.find(row[static_cast<std::size_t>(id)]);
        if (it == by_id.end())
            throw std::invalid_argument("scores reference unknown stimulus '" +
                                        row[static_cast<std::size_t>(id)] + "'");
        const double v = detail::to_number(row[static_cast<std::size_t>(score)], "score");
        if (v < 1.0 || v > 5.0 || v != std::floor(v))
            throw std::invalid_argument("stimulus " + it->second->stimulus_id +
                                        ": opinion scores must be integers in 1..5, got '" +
                                        row[static_cast<std::size_t>(score)] + "'");
        it->second->raw_scores.push_back(static_cast<int>(v));
    }
    for (StimulusRecord& r : records) {
        if (r.raw_scores.size() >= 2) {
            const stats::MosResult m = stats::mos_with_ci(r.raw_scores);
            r.mos = m.mos;
            r.ci95 = m.ci95;
        }
    }
}

/// Objective-score schema: stimulus_id, metric, value.
inline void attach_objective_scores(std::vector<StimulusRecord>& records, const io::CsvTable& t) {
    const int id = t.require_column("stimulus_id");
    const int metric = t.require_column("metric");
    const int value = t.require_column("value");
    std::map<std::string, StimulusRecord*> by_id;
    for (StimulusRecord& r : records) by_id[r.stimulus_id] = &r;
    for (const auto& row : t.rows) {
        const auto it = by_id.find(row[static_cast<std::size_t>(id)]);
        if (it == by_id.end())
            throw std::invalid_argument("objective scores reference unknown stimulus '" +
                                        row[static_cast<std::size_t>(id)] + "'");
        it->second->metric_scores[row[static_cast<std::size_t>(metric)]] =
            detail::to_number(row[static_cast<std::size_t>(value)], "metric value");
    }
}

} // namespace pcqa::bench
