// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <cstdlib>
#include <ctime>
#include <string>
#include <utility>
#include <vector>

#include "pcqa/io/digest.hpp"
#include "pcqa/io/json_writer.hpp"

#ifndef PCQA_VERSION
#define PCQA_VERSION "0.0.0"
#endif

namespace pcqa {

/// Provenance block embedded in every emitted report: identical manifests
/// imply bit-identical reports. The timestamp honors SOURCE_DATE_EPOCH so
/// reproducible runs serialize reproducibly.
struct RunManifest {
    std::string command;
    std::string config_fingerprint;
    std::vector<std::pair<std::string, std::string>> input_digests;  // path -> digest
    std::string tool_version = PCQA_VERSION;
    std::string timestamp;

    static std::string now_iso8601() {
        std::time_t t;
        if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
            t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
        else
            t = std::time(nullptr);
        char buf[32];
        std::tm tm_utc{};
        gmtime_r(&t, &tm_utc);
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        return buf;
    }

    static RunManifest for_command(std::string command, std::string config_fingerprint = "") {
        RunManifest m;
        m.command = std::move(command);
        m.config_fingerprint = std::move(config_fingerprint);
        m.timestamp = now_iso8601();
        return m;
    }

    void add_input(const std::string& path) { input_digests.emplace_back(path, io::digest_file(path)); }

    void write_json(io::JsonWriter& w) const {
        w.key("run").begin_object();
        w.key("command").value(command);
        w.key("config_fingerprint").value(config_fingerprint);
        w.key("inputs").begin_object();
        for (const auto& [path, digest] : input_digests) w.key(path).value(digest);
        w.end_object();
        w.key("tool_version").value(tool_version);
        w.key("timestamp").value(timestamp);
        w.end_object();
    }
};

} // namespace pcqa
