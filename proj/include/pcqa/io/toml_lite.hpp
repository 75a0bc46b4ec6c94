// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT
//
// Minimal TOML subset for metric profiles: [table] headers, key = value with
// string / boolean / number / flat numeric-array values, # comments. Not a
// general TOML parser and not meant to be one.

#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace pcqa::io {

using TomlValue = std::variant<double, bool, std::string, std::vector<double>>;

struct TomlDocument {
    // table -> key -> value ("" table for top-level keys)
    std::map<std::string, std::map<std::string, TomlValue>> tables;

    bool has(const std::string& table, const std::string& key) const {
        const auto t = tables.find(table);
        return t != tables.end() && t->second.count(key) > 0;
    }

    const TomlValue& get(const std::string& table, const std::string& key) const {
        const auto t = tables.find(table);
        if (t == tables.end() || !t->second.count(key))
            throw std::out_of_range("toml: missing " + table + "." + key);
        return t->second.at(key);
    }

    double number(const std::string& table, const std::string& key) const {
        return std::get<double>(get(table, key));
    }
    std::string string(const std::string& table, const std::string& key) const {
        return std::get<std::string>(get(table, key));
    }
    bool boolean(const std::string& table, const std::string& key) const {
        return std::get<bool>(get(table, key));
    }
    std::vector<double> array(const std::string& table, const std::string& key) const {
        return std::get<std::vector<double>>(get(table, key));
    }
};

namespace toml_detail {

inline std::string strip(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

inline std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

inline TomlValue parse_value(const std::string& raw, std::size_t line_no) {
    const std::string v = strip(raw);
    if (v.empty()) throw std::invalid_argument("toml line " + std::to_string(line_no) + ": empty value");
    if (v == "true") return true;
    if (v == "false") return false;
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            throw std::invalid_argument("toml line " + std::to_string(line_no) + ": unterminated string");
        return v.substr(1, v.size() - 2);
    }
    if (v.front() == '[') {
        if (v.back() != ']')
            throw std::invalid_argument("toml line " + std::to_string(line_no) + ": unterminated array");
        std::vector<double> arr;
        std::string item;
        std::istringstream in(v.substr(1, v.size() - 2));
        while (std::getline(in, item, ',')) {
            const std::string t = strip(item);
            if (t.empty()) continue;
            try {
                std::size_t used = 0;
                arr.push_back(std::stod(t, &used));
                if (used != t.size()) throw std::invalid_argument(t);
            } catch (const std::exception&) {
                throw std::invalid_argument("toml line " + std::to_string(line_no) +
                                            ": non-numeric array item '" + t + "'");
            }
        }
        return arr;
    }
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument("toml line " + std::to_string(line_no) + ": bad value '" + v + "'");
    }
}

} // namespace toml_detail

inline TomlDocument parse_toml(std::istream& in) {
    using namespace toml_detail;
    TomlDocument doc;
    std::string current;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = strip(strip_comment(line));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw std::invalid_argument("toml line " + std::to_string(line_no) + ": bad table header");
            current = strip(s.substr(1, s.size() - 2));
            doc.tables[current];
        } else {
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("toml line " + std::to_string(line_no) + ": expected key = value");
            const std::string key = strip(s.substr(0, eq));
            if (key.empty())
                throw std::invalid_argument("toml line " + std::to_string(line_no) + ": empty key");
            doc.tables[current][key] = parse_value(s.substr(eq + 1), line_no);
        }
    }
    return doc;
}

inline TomlDocument parse_toml(const std::string& text) {
    std::istringstream in(text);
    return parse_toml(in);
}

inline TomlDocument read_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profile file: " + path);
    return parse_toml(in);
}

} // namespace pcqa::io
