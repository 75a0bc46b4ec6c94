// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcqa/ply_io.hpp"
#include "pcqa/point_cloud.hpp"

namespace pcqa {

enum class CodecErrorKind {
    binary_missing,
    encode_failed,
    decode_failed,
    lossless_contract_violation,
    unparsable_output,
};

class CodecError : public std::runtime_error {
public:
    CodecError(CodecErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}
    CodecErrorKind kind() const { return kind_; }

private:
    CodecErrorKind kind_;
};

/// One external G-PCC run: texture (attribute) encoding over untouched
/// geometry. The mode is fixed to lossless-geometry-lossy-atts with
/// positionQuantizationScale 1 so the codec cannot add geometry artifacts;
/// the attribute-rate parameter is passed through to the config template
/// verbatim.
struct CodecInvocation {
    std::string binary_path;                    // tmc3-compatible binary
    std::string config_template;                // text with {{...}} placeholders
    std::string qp;                             // attribute-rate parameter, verbatim
    std::filesystem::path working_dir;          // empty: fresh temp directory
    std::vector<std::string> encode_log;        // captured after the run
    std::vector<std::string> decode_log;

    static constexpr const char* mode = "lossless-geometry-lossy-atts";
    static constexpr int position_quantization_scale = 1;
};

struct EncodedStimulus {
    PointCloud decoded;
    std::uint64_t stream_bits = 0;          // whole compressed stream
    std::uint64_t geometry_bits = 0;        // per-stream breakdown when the
    std::uint64_t texture_bits = 0;         //   encoder log reports it
    std::filesystem::path working_dir;
};

namespace gpcc_detail {

inline std::string render_template(std::string text,
                                   const std::vector<std::pair<std::string, std::string>>& subs) {
    for (const auto& [key, value] : subs) {
        const std::string token = "{{" + key + "}}";
        std::size_t pos = 0;
        while ((pos = text.find(token, pos)) != std::string::npos) {
            text.replace(pos, token.size(), value);
            pos += value.size();
        }
    }
    return text;
}

inline std::vector<std::string> read_lines(const std::filesystem::path& p) {
    std::vector<std::string> lines;
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

/// "<label> bitstream size <N> B" -> bits; 0 when the log has no such line.
inline std::uint64_t stream_bits_from_log(const std::vector<std::string>& log,
                                          const std::string& label) {
    for (const std::string& line : log) {
        const std::string needle = label + " bitstream size ";
        const auto at = line.find(needle);
        if (at == std::string::npos) continue;
        std::istringstream rest(line.substr(at + needle.size()));
        std::uint64_t bytes = 0;
        if (rest >> bytes) return bytes * 8;
    }
    return 0;
}

inline std::filesystem::path fresh_temp_dir() {
    std::random_device rd;
    std::uniform_int_distribution<std::uint64_t> any;
    for (int attempt = 0; attempt < 16; ++attempt) {
        auto dir = std::filesystem::temp_directory_path() /
                   ("pcqa-gpcc-" + std::to_string(any(rd)));
        std::error_code ec;
        if (std::filesystem::create_directories(dir, ec)) return dir;
    }
    throw std::runtime_error("could not create a temp working directory");
}

inline int run_logged(const std::string& command, const std::filesystem::path& log_path) {
    const std::string full = command + " > " + log_path.string() + " 2>&1";
    return std::system(full.c_str());
}

inline std::vector<Vec3> sorted_positions(const PointCloud& c) {
    std::vector<Vec3> pts = c.positions;
    std::sort(pts.begin(), pts.end(), [](Vec3 a, Vec3 b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    });
    return pts;
}

} // namespace gpcc_detail

/// Config text for one encode run. Contains the mode and
/// positionQuantizationScale tokens the pipeline depends on; everything else
/// comes from the template.
inline std::string generate_gpcc_config(const CodecInvocation& inv, const std::string& input_ply,
                                        const std::string& output_bin) {
    return gpcc_detail::render_template(
        inv.config_template,
        {{"MODE", CodecInvocation::mode},
         {"PQS", std::to_string(CodecInvocation::position_quantization_scale)},
         {"QP", inv.qp},
         {"INPUT", input_ply},
         {"OUTPUT", output_bin}});
}

/// Runs encode + decode through the external binary inside a per-invocation
/// working directory, parses the decoded cloud, and verifies the lossless
/// geometry contract (decoded positions are the same multiset as the input).
inline EncodedStimulus encode_texture_gpcc(const PointCloud& cloud, CodecInvocation& inv) {
    if (!cloud.has_colors())
        throw std::invalid_argument("encode_texture_gpcc: cloud has no colors to encode");
    namespace fs = std::filesystem;
    if (inv.binary_path.empty() || !fs::exists(inv.binary_path))
        throw CodecError(CodecErrorKind::binary_missing,
                         "codec binary not found: '" + inv.binary_path + "'");

    EncodedStimulus out;
    out.working_dir = inv.working_dir.empty() ? gpcc_detail::fresh_temp_dir() : inv.working_dir;
    fs::create_directories(out.working_dir);
    const fs::path input_ply = out.working_dir / "input.ply";
    const fs::path stream_bin = out.working_dir / "stream.bin";
    const fs::path decoded_ply = out.working_dir / "decoded.ply";
    const fs::path config_path = out.working_dir / "encoder.cfg";

    write_ply_file(cloud, input_ply.string(), {PlyFormat::binary_le});
    {
        std::ofstream cfg(config_path);
        cfg << generate_gpcc_config(inv, input_ply.string(), stream_bin.string());
    }

    const std::string encode_cmd = inv.binary_path + " --mode=encode --config=" + config_path.string() +
                                   " --input=" + input_ply.string() +
                                   " --output=" + stream_bin.string();
    const int enc_rc = gpcc_detail::run_logged(encode_cmd, out.working_dir / "encode.log");
    inv.encode_log = gpcc_detail::read_lines(out.working_dir / "encode.log");
    if (enc_rc != 0)
        throw CodecError(CodecErrorKind::encode_failed,
                         "encoder exited with status " + std::to_string(enc_rc) + " (logs in " +
                             out.working_dir.string() + ")");
    if (!fs::exists(stream_bin))
        throw CodecError(CodecErrorKind::encode_failed,
                         "encoder produced no bitstream at " + stream_bin.string());
    out.stream_bits = static_cast<std::uint64_t>(fs::file_size(stream_bin)) * 8;
    out.geometry_bits = gpcc_detail::stream_bits_from_log(inv.encode_log, "positions");
    out.texture_bits = gpcc_detail::stream_bits_from_log(inv.encode_log, "colors");

    const std::string decode_cmd = inv.binary_path + " --mode=decode --input=" + stream_bin.string() +
                                   " --output=" + decoded_ply.string();
    const int dec_rc = gpcc_detail::run_logged(decode_cmd, out.working_dir / "decode.log");
    inv.decode_log = gpcc_detail::read_lines(out.working_dir / "decode.log");
    if (dec_rc != 0)
        throw CodecError(CodecErrorKind::decode_failed,
                         "decoder exited with status " + std::to_string(dec_rc) + " (logs in " +
                             out.working_dir.string() + ")");

    try {
        out.decoded = read_ply_file(decoded_ply.string());
    } catch (const PlyError& e) {
        throw CodecError(CodecErrorKind::unparsable_output,
                         std::string("decoded output unparsable: ") + e.what());
    }

    if (gpcc_detail::sorted_positions(out.decoded) != gpcc_detail::sorted_positions(cloud))
        throw CodecError(CodecErrorKind::lossless_contract_violation,
                         "decoded geometry differs from the input point set (mode " +
                             std::string(CodecInvocation::mode) + " must keep geometry intact)");
    return out;
}

} // namespace pcqa
