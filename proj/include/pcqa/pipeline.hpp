// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>
#include <unistd.h>

#include "pcqa/bench/report_io.hpp"
#include "pcqa/characterize.hpp"
#include "pcqa/io/csv.hpp"
#include "pcqa/metrics/registry.hpp"
#include "pcqa/ply_io.hpp"

namespace pcqa {

/// Atomic file write: temp file in the same directory, then rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
    fs::create_directories(dir);
    const fs::path tmp = dir / (path.filename().string() + ".tmp-" +
                                std::to_string(::getpid()) + "-" +
                                std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())));
    {
        std::ofstream out(tmp, std::ios::binary);
        out << content;
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("cannot write " + path.string());
        }
    }
    fs::rename(tmp, path);
}

struct PipelineOptions {
    std::vector<std::string> commands;       // subset of {characterize, metric}
    std::vector<std::string> metric_names;   // metrics run per row
    metrics::MetricConfig config;
    std::string config_fingerprint;
    std::size_t jobs = 1;
};

struct PipelineRow {
    std::string stimulus_id;
    std::string content;
    std::string codec;
    std::string rate;
    std::string ref_path;
    std::string dist_path;
    double geometry_bits = 0.0;
    double texture_bits = 0.0;
    std::size_t points = 0;
};

struct PipelineRowResult {
    PipelineRow row;
    bool failed = false;
    std::string error;
    ContentProfile profile{};
    bool has_profile = false;
    std::vector<metrics::MetricResult> metrics;
};

struct PipelineOutcome {
    std::vector<PipelineRowResult> rows;
    bool any_failed = false;
};

/// Pipeline manifest schema: stimulus_id, content, codec, rate, ref, dist,
/// geometry_bits, texture_bits, points. ref may be empty for rows that only
/// get characterized.
inline std::vector<PipelineRow> load_pipeline_manifest(const io::CsvTable& t) {
    const int id = t.require_column("stimulus_id");
    const int content = t.column("content");
    const int codec = t.column("codec");
    const int rate = t.column("rate");
    const int ref = t.column("ref");
    const int dist = t.require_column("dist");
    const int gbits = t.column("geometry_bits");
    const int tbits = t.column("texture_bits");
    const int pts = t.column("points");
    auto field = [&](const std::vector<std::string>& row, int col) {
        return col >= 0 && static_cast<std::size_t>(col) < row.size() ? row[static_cast<std::size_t>(col)]
                                                                      : std::string();
    };
    std::vector<PipelineRow> rows;
    for (const auto& raw : t.rows) {
        PipelineRow r;
        r.stimulus_id = field(raw, id);
        r.content = field(raw, content);
        r.codec = field(raw, codec);
        r.rate = field(raw, rate);
        r.ref_path = field(raw, ref);
        r.dist_path = field(raw, dist);
        const std::string g = field(raw, gbits), x = field(raw, tbits), p = field(raw, pts);
        if (!g.empty()) r.geometry_bits = bench::detail::to_number(g, "geometry_bits");
        if (!x.empty()) r.texture_bits = bench::detail::to_number(x, "texture_bits");
        if (!p.empty()) r.points = static_cast<std::size_t>(bench::detail::to_number(p, "points"));
        rows.push_back(std::move(r));
    }
    return rows;
}

/// Executes the requested commands for every manifest row. Rows run in
/// parallel up to `jobs`, results are assembled in manifest order, and a
/// row failure never stops the batch.
inline PipelineOutcome run_pipeline(const std::vector<PipelineRow>& rows, const PipelineOptions& opt) {
    PipelineOutcome outcome;
    outcome.rows.resize(rows.size());

    const bool want_characterize =
        std::find(opt.commands.begin(), opt.commands.end(), "characterize") != opt.commands.end();
    const bool want_metric =
        std::find(opt.commands.begin(), opt.commands.end(), "metric") != opt.commands.end();
    for (const std::string& c : opt.commands)
        if (c != "characterize" && c != "metric")
            throw std::invalid_argument("pipeline: unknown command '" + c + "'");

    auto run_row = [&](std::size_t i) {
        PipelineRowResult& out = outcome.rows[i];
        out.row = rows[i];
        try {
            const PointCloud dist = read_ply_file(rows[i].dist_path);
            if (want_characterize) {
                out.profile = characterize(dist, 20, opt.config.ycbcr);
                out.has_profile = true;
            }
            if (want_metric) {
                if (rows[i].ref_path.empty())
                    throw std::invalid_argument("metric command needs a ref column");
                const PointCloud ref = read_ply_file(rows[i].ref_path);
                for (const std::string& name : opt.metric_names)
                    out.metrics.push_back(metrics::run_metric(name, ref, dist, opt.config));
            }
        } catch (const std::exception& e) {
            out.failed = true;
            out.error = e.what();
        }
    };

    const std::size_t jobs = std::max<std::size_t>(1, opt.jobs);
    if (jobs == 1 || rows.size() <= 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) run_row(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        const std::size_t n_workers = std::min(jobs, rows.size());
        workers.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w)
            workers.emplace_back([&]() {
                for (std::size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1))
                    run_row(i);
            });
        for (std::thread& t : workers) t.join();
    }
    for (const PipelineRowResult& r : outcome.rows) outcome.any_failed |= r.failed;
    return outcome;
}

/// Combined machine-readable report over all rows, in manifest order.
inline std::string pipeline_report_json(const RunManifest& manifest, const PipelineOutcome& outcome) {
    io::JsonWriter w;
    w.begin_object();
    manifest.write_json(w);
    w.key("rows").begin_array();
    for (const PipelineRowResult& r : outcome.rows) {
        w.begin_object();
        w.key("stimulus_id").value(r.row.stimulus_id);
        w.key("content").value(r.row.content);
        w.key("codec").value(r.row.codec);
        w.key("rate").value(r.row.rate);
        w.key("failed").value(r.failed);
        if (r.failed) {
            w.key("error").value(r.error);
        } else {
            if (r.has_profile) {
                w.key("profile");
                bench::write_content_profile(w, r.profile);
            }
            if (!r.metrics.empty()) {
                w.key("metrics").begin_array();
                for (const auto& m : r.metrics) bench::write_metric_result(w, m);
                w.end_array();
            }
        }
        w.end_object();
    }
    w.end_array();
    w.key("failed_rows").value([&] {
        std::size_t n = 0;
        for (const auto& r : outcome.rows) n += r.failed ? 1 : 0;
        return n;
    }());
    w.end_object();
    return std::move(w).str();
}

/// RD-table rows assembled from pipeline results (metric columns from the
/// row's metric results; MOS columns left to the benchmark path).
inline std::string pipeline_rd_table_csv(const PipelineOutcome& outcome) {
    std::vector<bench::StimulusRecord> records;
    for (const PipelineRowResult& r : outcome.rows) {
        if (r.failed) continue;
        bench::StimulusRecord rec;
        rec.stimulus_id = r.row.stimulus_id;
        rec.content = r.row.content;
        rec.codec = r.row.codec;
        rec.rate = r.row.rate;
        rec.geometry_bits = r.row.geometry_bits;
        rec.texture_bits = r.row.texture_bits;
        rec.points = r.row.points ? r.row.points : 1;
        for (const auto& m : r.metrics) rec.metric_scores[m.name] = m.value;
        records.push_back(std::move(rec));
    }
    return bench::rd_table_csv(records);
}

} // namespace pcqa
