// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT
//
// Deterministic JSON emitter for reports: insertion-ordered keys and fixed
// 9-significant-digit float formatting so identical runs serialize to
// identical bytes. (The vendored nlohmann parser stays on the reading side;
// its float output is shortest-round-trip, which is not what reports pin.)

#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace pcqa::io {

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    return out;
}

/// Report float convention: 9 significant digits; non-finite values become
/// null (JSON has no inf), with the metric's `identical` flag carrying the
/// meaning.
inline std::string json_number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

/// Minimal streaming builder. Values are appended in call order; the caller
/// closes every scope it opens.
class JsonWriter {
public:
    std::string str() && { return std::move(out_); }
    const std::string& str() const& { return out_; }

    JsonWriter& begin_object() { return raw("{"); }
    JsonWriter& end_object() {
        out_ += "}";
        return *this;
    }
    JsonWriter& begin_array() { return raw("["); }
    JsonWriter& end_array() {
        out_ += "]";
        return *this;
    }

    JsonWriter& key(const std::string& k) {
        raw("\"" + json_escape(k) + "\"");
        out_ += ":";
        return *this;
    }

    JsonWriter& value(double v) { return raw(json_number(v)); }
    JsonWriter& value(int v) { return raw(std::to_string(v)); }
    JsonWriter& value(long v) { return raw(std::to_string(v)); }
    JsonWriter& value(std::size_t v) { return raw(std::to_string(v)); }
    JsonWriter& value(bool v) { return raw(v ? "true" : "false"); }
    JsonWriter& value(const std::string& v) { return raw("\"" + json_escape(v) + "\""); }
    JsonWriter& value(const char* v) { return value(std::string(v)); }
    JsonWriter& null() { return raw("null"); }

private:
    JsonWriter& raw(const std::string& text) {
        if (!out_.empty()) {
            const char last = out_.back();
            if (last != '{' && last != '[' && last != ':') out_ += ",";
        }
        out_ += text;
        return *this;
    }

    std::string out_;
};

} // namespace pcqa::io
