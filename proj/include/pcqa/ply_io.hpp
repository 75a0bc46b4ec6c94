// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcqa/point_cloud.hpp"

namespace pcqa {

enum class PlyErrorKind {
    malformed_header,
    unsupported_format,
    vertex_count_mismatch,
    non_numeric_payload,
    io_failure,
};

class PlyError : public std::runtime_error {
public:
    PlyError(PlyErrorKind kind, std::string message) : std::runtime_error(std::move(message)), kind_(kind) {}
    PlyErrorKind kind() const { return kind_; }

private:
    PlyErrorKind kind_;
};

enum class PlyFormat { ascii, binary_le };

namespace ply_detail {

enum class ScalarType { i8, u8, i16, u16, i32, u32, f32, f64 };

inline std::optional<ScalarType> scalar_type(const std::string& s) {
    if (s == "char" || s == "int8") return ScalarType::i8;
    if (s == "uchar" || s == "uint8") return ScalarType::u8;
    if (s == "short" || s == "int16") return ScalarType::i16;
    if (s == "ushort" || s == "uint16") return ScalarType::u16;
    if (s == "int" || s == "int32") return ScalarType::i32;
    if (s == "uint" || s == "uint32") return ScalarType::u32;
    if (s == "float" || s == "float32") return ScalarType::f32;
    if (s == "double" || s == "float64") return ScalarType::f64;
    return std::nullopt;
}

inline std::size_t type_size(ScalarType t) {
    switch (t) {
        case ScalarType::i8:
        case ScalarType::u8: return 1;
        case ScalarType::i16:
        case ScalarType::u16: return 2;
        case ScalarType::i32:
        case ScalarType::u32: return 4;
        case ScalarType::f32: return 4;
        case ScalarType::f64: return 8;
    }
    return 0;
}

inline bool is_float_type(ScalarType t) { return t == ScalarType::f32 || t == ScalarType::f64; }

struct Property {
    std::string name;
    ScalarType type = ScalarType::f32;
    bool is_list = false;
    ScalarType count_type = ScalarType::u8;
};

struct Element {
    std::string name;
    std::size_t count = 0;
    std::vector<Property> properties;
};

struct Header {
    PlyFormat format = PlyFormat::ascii;
    std::vector<Element> elements;
    std::size_t body_offset = 0;  // bytes from stream start
    std::size_t header_lines = 0;
};

[[noreturn]] inline void fail_header(std::size_t line, const std::string& what) {
    throw PlyError(PlyErrorKind::malformed_header,
                   "ply header line " + std::to_string(line) + ": " + what);
}

inline Header parse_header(std::istream& in) {
    Header header;
    std::string line;
    std::size_t line_no = 0;
    std::size_t offset = 0;
    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        offset += line.size() + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    };

    if (!next_line() || line != "ply") fail_header(1, "expected magic 'ply'");
    bool format_seen = false;
    bool done = false;
    while (next_line()) {
        std::istringstream ls(line);
        std::string keyword;
        ls >> keyword;
        if (keyword.empty() || keyword == "comment" || keyword == "obj_info") continue;
        if (keyword == "format") {
            std::string fmt, version;
            ls >> fmt >> version;
            if (fmt == "ascii") header.format = PlyFormat::ascii;
            else if (fmt == "binary_little_endian") header.format = PlyFormat::binary_le;
            else if (fmt == "binary_big_endian")
                throw PlyError(PlyErrorKind::unsupported_format,
                               "ply header line " + std::to_string(line_no) +
                                   ": binary_big_endian is not supported");
            else fail_header(line_no, "unknown format '" + fmt + "'");
            if (version != "1.0") fail_header(line_no, "unsupported version '" + version + "'");
            format_seen = true;
        } else if (keyword == "element") {
            std::string name;
            long long count = -1;
            ls >> name >> count;
            if (name.empty() || count < 0) fail_header(line_no, "bad element declaration");
            header.elements.push_back({name, static_cast<std::size_t>(count), {}});
        } else if (keyword == "property") {
            if (header.elements.empty()) fail_header(line_no, "property before any element");
            std::string t1;
            ls >> t1;
            Property prop;
            if (t1 == "list") {
                std::string ct, vt;
                ls >> ct >> vt >> prop.name;
                auto c = scalar_type(ct), v = scalar_type(vt);
                if (!c || !v || prop.name.empty()) fail_header(line_no, "bad list property");
                prop.is_list = true;
                prop.count_type = *c;
                prop.type = *v;
            } else {
                auto t = scalar_type(t1);
                ls >> prop.name;
                if (!t || prop.name.empty()) fail_header(line_no, "bad property declaration");
                prop.type = *t;
            }
            header.elements.back().properties.push_back(prop);
        } else if (keyword == "end_header") {
            done = true;
            break;
        } else {
            fail_header(line_no, "unknown keyword '" + keyword + "'");
        }
    }
    if (!done) fail_header(line_no, "missing end_header");
    if (!format_seen) fail_header(line_no, "missing format line");
    header.body_offset = offset;
    header.header_lines = line_no;
    return header;
}

// Indices of the vertex properties we materialize; -1 = absent.
struct VertexLayout {
    int x = -1, y = -1, z = -1;
    int r = -1, g = -1, b = -1;
    int nx = -1, ny = -1, nz = -1;
    bool has_colors() const { return r >= 0 && g >= 0 && b >= 0; }
    bool has_normals() const { return nx >= 0 && ny >= 0 && nz >= 0; }
};

inline VertexLayout vertex_layout(const Element& elem) {
    VertexLayout lay;
    for (int i = 0; i < static_cast<int>(elem.properties.size()); ++i) {
        const Property& p = elem.properties[static_cast<std::size_t>(i)];
        if (p.is_list) continue;
        if (p.name == "x" && is_float_type(p.type)) lay.x = i;
        else if (p.name == "y" && is_float_type(p.type)) lay.y = i;
        else if (p.name == "z" && is_float_type(p.type)) lay.z = i;
        else if (p.name == "red" && p.type == ScalarType::u8) lay.r = i;
        else if (p.name == "green" && p.type == ScalarType::u8) lay.g = i;
        else if (p.name == "blue" && p.type == ScalarType::u8) lay.b = i;
        else if (p.name == "nx" && is_float_type(p.type)) lay.nx = i;
        else if (p.name == "ny" && is_float_type(p.type)) lay.ny = i;
        else if (p.name == "nz" && is_float_type(p.type)) lay.nz = i;
    }
    return lay;
}

class BinaryReader {
public:
    BinaryReader(std::istream& in, std::size_t offset) : in_(in), offset_(offset) {}

    std::size_t offset() const { return offset_; }

    double read_scalar(ScalarType t) {
        unsigned char buf[8];
        read_bytes(buf, type_size(t));
        switch (t) {
            case ScalarType::i8: return static_cast<double>(static_cast<std::int8_t>(buf[0]));
            case ScalarType::u8: return static_cast<double>(buf[0]);
            case ScalarType::i16: return static_cast<double>(load<std::int16_t>(buf));
            case ScalarType::u16: return static_cast<double>(load<std::uint16_t>(buf));
            case ScalarType::i32: return static_cast<double>(load<std::int32_t>(buf));
            case ScalarType::u32: return static_cast<double>(load<std::uint32_t>(buf));
            case ScalarType::f32: return static_cast<double>(load<float>(buf));
            case ScalarType::f64: return load<double>(buf);
        }
        return 0.0;
    }

    void skip(std::size_t n) {
        in_.ignore(static_cast<std::streamsize>(n));
        if (in_.gcount() != static_cast<std::streamsize>(n))
            throw PlyError(PlyErrorKind::vertex_count_mismatch,
                           "ply body truncated at byte " + std::to_string(offset_ + static_cast<std::size_t>(in_.gcount())));
        offset_ += n;
    }

private:
    template <typename T>
    static T load(const unsigned char* buf) {
        T v;
        std::memcpy(&v, buf, sizeof(T));
        return v;  // host assumed little-endian
    }

    void read_bytes(unsigned char* buf, std::size_t n) {
        in_.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in_.gcount()) != n)
            throw PlyError(PlyErrorKind::vertex_count_mismatch,
                           "ply body truncated at byte " + std::to_string(offset_ + static_cast<std::size_t>(in_.gcount())));
        offset_ += n;
    }

    std::istream& in_;
    std::size_t offset_;
};

// Whitespace token reader for ASCII bodies that tracks line numbers for
// diagnostics.
class AsciiReader {
public:
    AsciiReader(std::istream& in, std::size_t first_line) : in_(in), line_(first_line) {}

    std::size_t line() const { return line_; }

    std::string next_token() {
        std::string tok;
        int c;
        while ((c = in_.get()) != EOF) {
            if (c == '\n') { ++line_; continue; }
            if (std::isspace(c)) continue;
            break;
        }
        if (c == EOF) return tok;
        tok.push_back(static_cast<char>(c));
        while ((c = in_.get()) != EOF && !std::isspace(c)) tok.push_back(static_cast<char>(c));
        if (c == '\n') ++line_;
        return tok;
    }

    double next_number(const char* element_name) {
        const std::size_t at = line_;
        std::string tok = next_token();
        if (tok.empty())
            throw PlyError(PlyErrorKind::vertex_count_mismatch,
                           std::string("ply body ended early in element '") + element_name +
                               "' at line " + std::to_string(at));
        try {
            std::size_t pos = 0;
            double v = std::stod(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw PlyError(PlyErrorKind::non_numeric_payload,
                           "ply line " + std::to_string(at) + ": non-numeric value '" + tok + "'");
        }
    }

private:
    std::istream& in_;
    std::size_t line_;
};

} // namespace ply_detail

/// Parses an ASCII or binary little-endian PLY stream into a PointCloud.
/// The vertex element must declare floating-point x,y,z; uchar red/green/blue
/// and floating-point nx/ny/nz are picked up when present; everything else
/// (extra properties, other elements) is skipped. Errors carry the offending
/// line (ASCII) or byte offset (binary).
inline PointCloud parse_ply(std::istream& in) {
    using namespace ply_detail;
    const Header header = parse_header(in);

    const Element* vertex = nullptr;
    for (const Element& e : header.elements)
        if (e.name == "vertex") { vertex = &e; break; }
    if (!vertex || vertex->count == 0)
        throw PlyError(PlyErrorKind::malformed_header, "ply header: no non-empty vertex element");
    const VertexLayout lay = vertex_layout(*vertex);
    if (lay.x < 0 || lay.y < 0 || lay.z < 0)
        throw PlyError(PlyErrorKind::malformed_header,
                       "ply header: vertex element must declare floating-point x, y, z");

    PointCloud cloud;
    cloud.positions.resize(vertex->count);
    if (lay.has_colors()) cloud.colors.resize(vertex->count);
    if (lay.has_normals()) cloud.normals.resize(vertex->count);

    std::vector<double> row(vertex->count ? vertex->properties.size() : 0);

    auto store_row = [&](std::size_t i, const std::vector<double>& vals) {
        cloud.positions[i] = {vals[static_cast<std::size_t>(lay.x)], vals[static_cast<std::size_t>(lay.y)],
                              vals[static_cast<std::size_t>(lay.z)]};
        if (lay.has_colors()) {
            auto to8 = [](double v) { return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0)); };
            cloud.colors[i] = {to8(vals[static_cast<std::size_t>(lay.r)]), to8(vals[static_cast<std::size_t>(lay.g)]),
                               to8(vals[static_cast<std::size_t>(lay.b)])};
        }
        if (lay.has_normals())
            cloud.normals[i] = {vals[static_cast<std::size_t>(lay.nx)], vals[static_cast<std::size_t>(lay.ny)],
                                vals[static_cast<std::size_t>(lay.nz)]};
    };

    if (header.format == PlyFormat::ascii) {
        AsciiReader reader(in, header.header_lines + 1);
        for (const Element& elem : header.elements) {
            const bool is_vertex = &elem == vertex;
            for (std::size_t i = 0; i < elem.count; ++i) {
                if (is_vertex) {
                    for (std::size_t p = 0; p < elem.properties.size(); ++p) {
                        const Property& prop = elem.properties[p];
                        if (prop.is_list) {
                            const double n = reader.next_number(elem.name.c_str());
                            for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j)
                                reader.next_number(elem.name.c_str());
                            row[p] = 0.0;
                        } else {
                            row[p] = reader.next_number(elem.name.c_str());
                        }
                    }
                    store_row(i, row);
                } else {
                    for (const Property& prop : elem.properties) {
                        if (prop.is_list) {
                            const double n = reader.next_number(elem.name.c_str());
                            for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j)
                                reader.next_number(elem.name.c_str());
                        } else {
                            reader.next_number(elem.name.c_str());
                        }
                    }
                }
            }
        }
    } else {
        BinaryReader reader(in, header.body_offset);
        for (const Element& elem : header.elements) {
            const bool is_vertex = &elem == vertex;
            for (std::size_t i = 0; i < elem.count; ++i) {
                if (is_vertex) {
                    for (std::size_t p = 0; p < elem.properties.size(); ++p) {
                        const Property& prop = elem.properties[p];
                        if (prop.is_list) {
                            const double n = reader.read_scalar(prop.count_type);
                            reader.skip(static_cast<std::size_t>(n) * type_size(prop.type));
                            row[p] = 0.0;
                        } else {
                            row[p] = reader.read_scalar(prop.type);
                        }
                    }
                    store_row(i, row);
                } else {
                    for (const Property& prop : elem.properties) {
                        if (prop.is_list) {
                            const double n = reader.read_scalar(prop.count_type);
                            reader.skip(static_cast<std::size_t>(n) * type_size(prop.type));
                        } else {
                            reader.skip(type_size(prop.type));
                        }
                    }
                }
            }
        }
    }
    return cloud;
}

inline PointCloud parse_ply(const std::string& bytes) {
    std::istringstream in(bytes, std::ios::binary);
    return parse_ply(in);
}

inline PointCloud read_ply_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PlyError(PlyErrorKind::io_failure, "cannot open ply file: " + path);
    return parse_ply(in);
}

struct PlyWriteOptions {
    PlyFormat format = PlyFormat::binary_le;
    /// Write coordinates/normals as float32 instead of float64. Doubles are
    /// the default so parse(write(c)) is bit-exact.
    bool single_precision = false;
};

inline void write_ply(const PointCloud& cloud, std::ostream& out, PlyWriteOptions opt = {}) {
    cloud.validate();
    const char* real = opt.single_precision ? "float" : "double";
    out << "ply\n";
    out << (opt.format == PlyFormat::ascii ? "format ascii 1.0\n" : "format binary_little_endian 1.0\n");
    out << "element vertex " << cloud.size() << "\n";
    out << "property " << real << " x\nproperty " << real << " y\nproperty " << real << " z\n";
    if (cloud.has_colors())
        out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    if (cloud.has_normals())
        out << "property " << real << " nx\nproperty " << real << " ny\nproperty " << real << " nz\n";
    out << "end_header\n";

    if (opt.format == PlyFormat::ascii) {
        char buf[64];
        auto put = [&](double v) {
            std::snprintf(buf, sizeof buf, "%.9g", v);
            out << buf;
        };
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            put(cloud.positions[i].x); out << ' ';
            put(cloud.positions[i].y); out << ' ';
            put(cloud.positions[i].z);
            if (cloud.has_colors())
                out << ' ' << static_cast<int>(cloud.colors[i].r) << ' ' << static_cast<int>(cloud.colors[i].g)
                    << ' ' << static_cast<int>(cloud.colors[i].b);
            if (cloud.has_normals()) {
                out << ' '; put(cloud.normals[i].x);
                out << ' '; put(cloud.normals[i].y);
                out << ' '; put(cloud.normals[i].z);
            }
            out << '\n';
        }
    } else {
        auto put_real = [&](double v) {
            if (opt.single_precision) {
                const float f = static_cast<float>(v);
                out.write(reinterpret_cast<const char*>(&f), sizeof f);
            } else {
                out.write(reinterpret_cast<const char*>(&v), sizeof v);
            }
        };
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            put_real(cloud.positions[i].x);
            put_real(cloud.positions[i].y);
            put_real(cloud.positions[i].z);
            if (cloud.has_colors()) {
                const Rgb8 c = cloud.colors[i];
                out.write(reinterpret_cast<const char*>(&c.r), 1);
                out.write(reinterpret_cast<const char*>(&c.g), 1);
                out.write(reinterpret_cast<const char*>(&c.b), 1);
            }
            if (cloud.has_normals()) {
                put_real(cloud.normals[i].x);
                put_real(cloud.normals[i].y);
                put_real(cloud.normals[i].z);
            }
        }
    }
    if (!out) throw PlyError(PlyErrorKind::io_failure, "ply write failed");
}

inline std::string write_ply(const PointCloud& cloud, PlyWriteOptions opt = {}) {
    std::ostringstream out(std::ios::binary);
    write_ply(cloud, out, opt);
    return std::move(out).str();
}

inline void write_ply_file(const PointCloud& cloud, const std::string& path, PlyWriteOptions opt = {}) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PlyError(PlyErrorKind::io_failure, "cannot open for write: " + path);
    write_ply(cloud, out, opt);
}

} // namespace pcqa
