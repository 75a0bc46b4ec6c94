// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT
//
// Command-line surface: characterization, metric computation, stimulus
// preparation, benchmarking, cross-evaluation comparison, RD tables, and the
// batch pipeline. JSON goes to stdout by default; --out writes atomically.
// Exit codes: 0 success, 1 (partial) failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "pcqa/bench/report_io.hpp"
#include "pcqa/characterize.hpp"
#include "pcqa/io/digest.hpp"
#include "pcqa/manifest.hpp"
#include "pcqa/metrics/registry.hpp"
#include "pcqa/pipeline.hpp"
#include "pcqa/ply_io.hpp"
#include "pcqa/stimulus/gpcc.hpp"
#include "pcqa/stimulus/recolor.hpp"

#ifndef PCQA_SHARE_DIR
#define PCQA_SHARE_DIR "share"
#endif

namespace {

using namespace pcqa;

struct CommonOut {
    std::string out_path;  // empty: stdout
    std::string format = "json";
};

void emit(const CommonOut& opt, const std::string& content) {
    if (opt.out_path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
    } else {
        write_file_atomic(opt.out_path, content);
    }
}

std::string default_profile_path() { return std::string(PCQA_SHARE_DIR) + "/profiles/default.toml"; }
std::string default_template_path() {
    return std::string(PCQA_SHARE_DIR) + "/gpcc/encoder-lifting-template.cfg";
}

struct LoadedProfile {
    metrics::MetricConfig config;
    std::string fingerprint;
};

LoadedProfile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profile: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    return {metrics::config_from_profile(io::parse_toml(text)), io::digest_string(text)};
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// ---------------------------------------------------------------- commands

int cmd_characterize(const std::string& input, std::size_t k, const std::string& matrix,
                     const CommonOut& out) {
    const PointCloud cloud = read_ply_file(input);
    const YcbcrMatrix m = matrix == "bt601" ? YcbcrMatrix::bt601 : YcbcrMatrix::bt709;
    const ContentProfile profile = characterize(cloud, k, m);
    if (out.format == "csv") {
        emit(out, bench::content_profile_csv(profile));
    } else {
        RunManifest manifest = RunManifest::for_command("characterize", io::digest_string(matrix));
        manifest.add_input(input);
        emit(out, bench::content_profile_json(manifest, profile));
    }
    return 0;
}

int cmd_metric(const std::string& ref_path, const std::string& dist_path,
               const std::string& metric_list, const std::string& profile_path, double peak_override,
               bool one_way, const CommonOut& out) {
    LoadedProfile profile = load_profile(profile_path);
    if (peak_override > 0.0) profile.config.peak_value = peak_override;
    if (one_way) profile.config.symmetric = false;
    const std::vector<std::string> names = split_list(metric_list);
    if (names.empty()) throw std::runtime_error("no metrics requested");

    const PointCloud ref = read_ply_file(ref_path);
    const PointCloud dist = read_ply_file(dist_path);
    std::vector<metrics::MetricResult> results;
    for (const std::string& name : names)
        results.push_back(metrics::run_metric(name, ref, dist, profile.config));

    if (out.format == "csv") {
        emit(out, bench::metric_report_csv(results));
    } else {
        RunManifest manifest = RunManifest::for_command(
            "metric",
            io::digest_string(profile.fingerprint + "|" + metric_list + (one_way ? "|one-way" : "")));
        manifest.add_input(ref_path);
        manifest.add_input(dist_path);
        emit(out, bench::metric_report_json(manifest, results));
    }
    return 0;
}

int cmd_recolor(const std::string& geometry_path, const std::string& reference_path,
                const std::string& out_path, bool ascii) {
    const PointCloud geometry = read_ply_file(geometry_path);
    const PointCloud reference = read_ply_file(reference_path);
    const PointCloud colored = recolor(geometry, reference);
    write_ply_file(colored, out_path, {ascii ? PlyFormat::ascii : PlyFormat::binary_le});
    std::cerr << "recolored " << colored.size() << " points -> " << out_path << "\n";
    return 0;
}

int cmd_prepare_stimuli(const std::string& geometry_path, const std::string& reference_path,
                        std::string codec_bin, const std::string& template_path, const std::string& qp,
                        const std::string& out_ply, const std::string& manifest_out,
                        const std::string& workdir, const std::string& content,
                        const std::string& codec_id, const std::string& rate) {
    if (codec_bin.empty()) {
        if (const char* env = std::getenv("PCQA_GPCC_BIN")) codec_bin = env;
    }
    const PointCloud geometry = read_ply_file(geometry_path);
    const PointCloud reference = read_ply_file(reference_path);
    const PointCloud colored = recolor(geometry, reference);

    CodecInvocation inv;
    inv.binary_path = codec_bin;
    inv.qp = qp;
    if (!workdir.empty()) inv.working_dir = workdir;
    {
        std::ifstream in(template_path);
        if (!in) throw std::runtime_error("cannot open codec template: " + template_path);
        std::stringstream buf;
        buf << in.rdbuf();
        inv.config_template = buf.str();
    }
    const EncodedStimulus encoded = encode_texture_gpcc(colored, inv);
    write_ply_file(encoded.decoded, out_ply, {PlyFormat::binary_le});

    const double points = static_cast<double>(colored.size());
    const double geom_bpp = static_cast<double>(encoded.geometry_bits) / points;
    const double tex_bpp = encoded.texture_bits
                               ? static_cast<double>(encoded.texture_bits) / points
                               : static_cast<double>(encoded.stream_bits) / points - geom_bpp;
    std::string manifest_csv = "content,codec,rate,geometry_bpp,texture_bpp,output\n";
    manifest_csv += io::csv_row(
        {content, codec_id, rate, io::json_number(geom_bpp), io::json_number(tex_bpp), out_ply});
    if (manifest_out.empty()) std::cout << manifest_csv;
    else write_file_atomic(manifest_out, manifest_csv);
    std::cerr << "stimulus ready: " << out_ply << " (" << encoded.stream_bits << " bits, logs in "
              << encoded.working_dir << ")\n";
    return 0;
}

int cmd_benchmark(const std::string& manifest_path, const std::string& scores_path,
                  const std::string& objective_path, const std::string& evaluation_id,
                  const std::string& metric_list, const CommonOut& out) {
    std::vector<bench::StimulusRecord> records =
        bench::load_stimulus_manifest(io::read_csv_file(manifest_path));
    bench::attach_raw_scores(records, io::read_csv_file(scores_path));
    bench::attach_objective_scores(records, io::read_csv_file(objective_path));

    const std::vector<std::string> names =
        metric_list.empty() ? bench::metrics_present(records) : split_list(metric_list);
    std::vector<bench::BenchmarkReport> reports;
    for (const std::string& name : names)
        reports.push_back(bench::benchmark_metric(records, name, evaluation_id));

    if (out.format == "csv") {
        emit(out, bench::benchmark_reports_csv(reports));
    } else {
        RunManifest manifest = RunManifest::for_command("benchmark", io::digest_string(metric_list));
        manifest.add_input(manifest_path);
        manifest.add_input(scores_path);
        manifest.add_input(objective_path);
        emit(out, bench::benchmark_reports_json(manifest, reports));
    }
    return 0;
}

int cmd_compare_evals(const std::string& manifest_path, const std::string& scores_a,
                      const std::string& scores_b, const CommonOut& out) {
    std::vector<bench::StimulusRecord> eval_a =
        bench::load_stimulus_manifest(io::read_csv_file(manifest_path));
    std::vector<bench::StimulusRecord> eval_b = eval_a;
    bench::attach_raw_scores(eval_a, io::read_csv_file(scores_a));
    bench::attach_raw_scores(eval_b, io::read_csv_file(scores_b));
    const bench::EvaluationComparison cmp = bench::compare_evaluations(eval_a, eval_b);

    RunManifest manifest = RunManifest::for_command("compare-evals");
    manifest.add_input(manifest_path);
    manifest.add_input(scores_a);
    manifest.add_input(scores_b);
    io::JsonWriter w;
    w.begin_object();
    manifest.write_json(w);
    w.key("paired_stimuli").value(cmp.paired_stimuli);
    w.key("linear_fit").begin_object();
    w.key("slope").value(cmp.fit.slope);
    w.key("intercept").value(cmp.fit.intercept);
    w.key("pcc").value(cmp.fit.correlation.pcc);
    w.key("srocc").value(cmp.fit.correlation.srocc);
    w.key("rmse").value(cmp.fit.correlation.rmse);
    w.key("outlier_ratio").value(cmp.fit.correlation.outlier_ratio);
    w.end_object();
    w.key("kruskal_wallis").begin_object();
    w.key("h").value(cmp.kruskal.h);
    w.key("p_value").value(cmp.kruskal.p_value);
    w.end_object();
    w.end_object();
    emit(out, std::move(w).str());
    return 0;
}

int cmd_rd_table(const std::string& manifest_path, const std::string& scores_path,
                 const std::string& objective_path, const CommonOut& out) {
    std::vector<bench::StimulusRecord> records =
        bench::load_stimulus_manifest(io::read_csv_file(manifest_path));
    if (!scores_path.empty()) bench::attach_raw_scores(records, io::read_csv_file(scores_path));
    if (!objective_path.empty())
        bench::attach_objective_scores(records, io::read_csv_file(objective_path));
    emit(out, bench::rd_table_csv(records));
    return 0;
}

int cmd_pipeline(const std::string& manifest_path, const std::string& commands,
                 const std::string& metric_list, const std::string& profile_path, std::size_t jobs,
                 const CommonOut& out, const std::string& rd_out) {
    const LoadedProfile profile = load_profile(profile_path);
    PipelineOptions opt;
    opt.commands = split_list(commands);
    opt.metric_names = split_list(metric_list);
    opt.config = profile.config;
    opt.config_fingerprint =
        io::digest_string(profile.fingerprint + "|" + commands + "|" + metric_list);
    opt.jobs = jobs;

    const std::vector<PipelineRow> rows = load_pipeline_manifest(io::read_csv_file(manifest_path));
    const PipelineOutcome outcome = run_pipeline(rows, opt);

    RunManifest manifest = RunManifest::for_command("pipeline", opt.config_fingerprint);
    manifest.add_input(manifest_path);
    emit(out, pipeline_report_json(manifest, outcome));
    if (!rd_out.empty()) write_file_atomic(rd_out, pipeline_rd_table_csv(outcome));

    for (const PipelineRowResult& r : outcome.rows)
        std::cerr << (r.failed ? "FAIL " : "ok   ") << r.row.stimulus_id
                  << (r.failed ? "  " + r.error : "") << "\n";
    return outcome.any_failed ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"point cloud quality assessment toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", PCQA_VERSION);

    // characterize
    std::string ch_input, ch_matrix = "bt709";
    std::size_t ch_k = 20;
    CommonOut ch_out;
    auto* ch = app.add_subcommand("characterize", "content statistics of one cloud");
    ch->add_option("input", ch_input, "input .ply")->required();
    ch->add_option("--k", ch_k, "neighbors for sparsity (default 20)");
    ch->add_option("--matrix", ch_matrix, "ycbcr matrix: bt709|bt601")
        ->check(CLI::IsMember({"bt709", "bt601"}));
    ch->add_option("--out", ch_out.out_path, "output file (default stdout)");
    ch->add_option("--format", ch_out.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    // metric
    std::string m_ref, m_dist, m_metrics = "d1,d2,pssim,pcqm,p2d,pcmrr,graphsim";
    std::string m_profile = default_profile_path();
    double m_peak = 0.0;
    bool m_one_way = false;
    CommonOut m_out;
    auto* me = app.add_subcommand("metric", "full-reference metrics for a ref/dist pair");
    me->add_option("--ref", m_ref, "reference .ply")->required();
    me->add_option("--dist", m_dist, "distorted .ply")->required();
    me->add_option("--metrics", m_metrics, "comma list: d1,d2,pssim,pcqm,p2d,pcmrr,graphsim");
    me->add_option("--config", m_profile, "metric profile (toml)");
    me->add_option("--peak", m_peak, "PSNR peak override");
    me->add_flag("--one-way", m_one_way, "disable D1/D2 symmetrization");
    me->add_option("--out", m_out.out_path, "output file (default stdout)");
    me->add_option("--format", m_out.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    // recolor
    std::string rc_geometry, rc_reference, rc_out;
    bool rc_ascii = false;
    auto* rc = app.add_subcommand("recolor", "nearest-neighbor texture transfer");
    rc->add_option("--geometry", rc_geometry, "geometry .ply")->required();
    rc->add_option("--reference", rc_reference, "colored reference .ply")->required();
    rc->add_option("--out", rc_out, "output .ply")->required();
    rc->add_flag("--ascii", rc_ascii, "write ascii instead of binary");

    // prepare-stimuli
    std::string ps_geometry, ps_reference, ps_bin;
    std::string ps_template = default_template_path();
    std::string ps_qp = "0.5", ps_out, ps_manifest_out, ps_workdir;
    std::string ps_content, ps_codec = "gpcc", ps_rate = "R01";
    auto* ps = app.add_subcommand("prepare-stimuli",
                                  "recolor decoded geometry and re-encode texture with G-PCC");
    ps->add_option("--geometry", ps_geometry, "decoded geometry .ply")->required();
    ps->add_option("--reference", ps_reference, "original textured .ply")->required();
    ps->add_option("--codec-bin", ps_bin, "G-PCC binary (or PCQA_GPCC_BIN)");
    ps->add_option("--template", ps_template, "encoder config template");
    ps->add_option("--qp", ps_qp, "attribute-rate parameter, passed verbatim");
    ps->add_option("--out", ps_out, "decoded stimulus .ply")->required();
    ps->add_option("--manifest-out", ps_manifest_out, "one-row manifest CSV (default stdout)");
    ps->add_option("--workdir", ps_workdir, "working directory (default: fresh temp dir)");
    ps->add_option("--content", ps_content, "content id for the manifest row");
    ps->add_option("--codec", ps_codec, "codec id for the manifest row");
    ps->add_option("--rate", ps_rate, "rate id for the manifest row");

    // benchmark
    std::string b_manifest, b_scores, b_objective, b_eval = "eval1", b_metrics;
    CommonOut b_out;
    auto* be = app.add_subcommand("benchmark", "logistic metric-to-MOS fits and correlations");
    be->add_option("--manifest", b_manifest, "stimulus manifest CSV")->required();
    be->add_option("--scores", b_scores, "raw opinion-score CSV")->required();
    be->add_option("--objective", b_objective, "objective-score CSV")->required();
    be->add_option("--evaluation", b_eval, "evaluation id for the report");
    be->add_option("--metrics", b_metrics, "comma list (default: all present)");
    be->add_option("--out", b_out.out_path, "output file (default stdout)");
    be->add_option("--format", b_out.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    // compare-evals
    std::string ce_manifest, ce_scores_a, ce_scores_b;
    CommonOut ce_out;
    auto* ce = app.add_subcommand("compare-evals", "statistical comparison of two evaluations");
    ce->add_option("--manifest", ce_manifest, "shared stimulus manifest CSV")->required();
    ce->add_option("--scores-a", ce_scores_a, "evaluation A raw scores CSV")->required();
    ce->add_option("--scores-b", ce_scores_b, "evaluation B raw scores CSV")->required();
    ce->add_option("--out", ce_out.out_path, "output file (default stdout)");

    // rd-table
    std::string rd_manifest, rd_scores, rd_objective;
    CommonOut rd_out;
    rd_out.format = "csv";
    auto* rd = app.add_subcommand("rd-table", "plot-ready rate-distortion CSV");
    rd->add_option("--manifest", rd_manifest, "stimulus manifest CSV")->required();
    rd->add_option("--scores", rd_scores, "raw opinion-score CSV");
    rd->add_option("--objective", rd_objective, "objective-score CSV");
    rd->add_option("--out", rd_out.out_path, "output file (default stdout)");

    // pipeline
    std::string pl_manifest, pl_commands = "metric", pl_metrics = "d1,d2,pssim";
    std::string pl_profile = default_profile_path(), pl_rd_out;
    std::size_t pl_jobs = 1;
    CommonOut pl_out;
    auto* pl = app.add_subcommand("pipeline", "batch execution over a manifest");
    pl->add_option("--manifest", pl_manifest, "pipeline manifest CSV")->required();
    pl->add_option("--commands", pl_commands, "comma list: characterize,metric");
    pl->add_option("--metrics", pl_metrics, "metrics per row");
    pl->add_option("--config", pl_profile, "metric profile (toml)");
    pl->add_option("--jobs", pl_jobs, "parallel rows (results independent of N)");
    pl->add_option("--out", pl_out.out_path, "report JSON (default stdout)");
    pl->add_option("--rd-out", pl_rd_out, "also emit an RD-table CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ch->parsed()) return cmd_characterize(ch_input, ch_k, ch_matrix, ch_out);
        if (me->parsed())
            return cmd_metric(m_ref, m_dist, m_metrics, m_profile, m_peak, m_one_way, m_out);
        if (rc->parsed()) return cmd_recolor(rc_geometry, rc_reference, rc_out, rc_ascii);
        if (ps->parsed())
            return cmd_prepare_stimuli(ps_geometry, ps_reference, ps_bin, ps_template, ps_qp, ps_out,
                                       ps_manifest_out, ps_workdir, ps_content, ps_codec, ps_rate);
        if (be->parsed())
            return cmd_benchmark(b_manifest, b_scores, b_objective, b_eval, b_metrics, b_out);
        if (ce->parsed()) return cmd_compare_evals(ce_manifest, ce_scores_a, ce_scores_b, ce_out);
        if (rd->parsed()) return cmd_rd_table(rd_manifest, rd_scores, rd_objective, rd_out);
        if (pl->parsed())
            return cmd_pipeline(pl_manifest, pl_commands, pl_metrics, pl_profile, pl_jobs, pl_out,
                                pl_rd_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
