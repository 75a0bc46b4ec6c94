// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#include <catch2/catch_amalgamated.hpp>

#include "pcqa/ply_io.hpp"
#include "support.hpp"

using namespace pcqa;

namespace {

const char* kOneVertexColored =
    "ply\n"
    "format ascii 1.0\n"
    "element vertex 1\n"
    "property float x\n"
    "property float y\n"
    "property float z\n"
    "property uchar red\n"
    "property uchar green\n"
    "property uchar blue\n"
    "end_header\n"
    "0 0 0 255 0 0\n";

} // namespace

TEST_CASE("minimal ascii file with one colored vertex") {
    const PointCloud cloud = parse_ply(std::string(kOneVertexColored));
    REQUIRE(cloud.size() == 1);
    CHECK(cloud.positions[0] == Vec3{0, 0, 0});
    REQUIRE(cloud.has_colors());
    CHECK(cloud.colors[0] == Rgb8{255, 0, 0});
    CHECK_FALSE(cloud.has_normals());
}

TEST_CASE("geometry-only ascii file leaves colors and normals absent") {
    const std::string body =
        "ply\nformat ascii 1.0\nelement vertex 2\n"
        "property float x\nproperty float y\nproperty float z\nend_header\n"
        "0 0 0\n1 2 3\n";
    const PointCloud cloud = parse_ply(body);
    REQUIRE(cloud.size() == 2);
    CHECK_FALSE(cloud.has_colors());
    CHECK_FALSE(cloud.has_normals());
    CHECK(cloud.positions[1] == Vec3{1, 2, 3});
}

TEST_CASE("vertex count mismatch is reported with position info") {
    const std::string body =
        "ply\nformat ascii 1.0\nelement vertex 2\n"
        "property float x\nproperty float y\nproperty float z\nend_header\n"
        "0 0 0\n";
    try {
        parse_ply(body);
        FAIL("expected PlyError");
    } catch (const PlyError& e) {
        CHECK(e.kind() == PlyErrorKind::vertex_count_mismatch);
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("non-numeric payload names the line") {
    const std::string body =
        "ply\nformat ascii 1.0\nelement vertex 1\n"
        "property float x\nproperty float y\nproperty float z\nend_header\n"
        "0 zero 0\n";
    try {
        parse_ply(body);
        FAIL("expected PlyError");
    } catch (const PlyError& e) {
        CHECK(e.kind() == PlyErrorKind::non_numeric_payload);
        CHECK(std::string(e.what()).find("line 8") != std::string::npos);
        CHECK(std::string(e.what()).find("zero") != std::string::npos);
    }
}

TEST_CASE("big-endian files are rejected as unsupported") {
    const std::string body = "ply\nformat binary_big_endian 1.0\nelement vertex 1\n"
                             "property float x\nproperty float y\nproperty float z\nend_header\n";
    try {
        parse_ply(body);
        FAIL("expected PlyError");
    } catch (const PlyError& e) {
        CHECK(e.kind() == PlyErrorKind::unsupported_format);
    }
}

TEST_CASE("malformed headers are rejected") {
    CHECK_THROWS_AS(parse_ply(std::string("plx\n")), PlyError);
    CHECK_THROWS_AS(parse_ply(std::string("ply\nformat ascii 1.0\nend_header\n")), PlyError);
    // x,y,z must be floating point
    CHECK_THROWS_AS(parse_ply(std::string("ply\nformat ascii 1.0\nelement vertex 1\n"
                                          "property int x\nproperty int y\nproperty int z\n"
                                          "end_header\n1 2 3\n")),
                    PlyError);
}

TEST_CASE("unknown properties and extra elements are skipped") {
    const std::string body =
        "ply\nformat ascii 1.0\n"
        "comment exported by nothing in particular\n"
        "element vertex 2\n"
        "property float x\nproperty float y\nproperty float z\n"
        "property uchar red\nproperty uchar green\nproperty uchar blue\n"
        "property uchar alpha\n"
        "element face 1\n"
        "property list uchar int vertex_indices\n"
        "end_header\n"
        "0 0 0 1 2 3 77\n"
        "1 1 1 4 5 6 88\n"
        "3 0 1 0\n";
    const PointCloud cloud = parse_ply(body);
    REQUIRE(cloud.size() == 2);
    CHECK(cloud.colors[1] == Rgb8{4, 5, 6});
}

TEST_CASE("writer declares normals when present") {
    PointCloud cloud;
    cloud.positions = {{1, 2, 3}};
    cloud.normals = {{0, 0, 1}};
    const std::string text = write_ply(cloud, {PlyFormat::ascii});
    CHECK(text.find("property double nx") != std::string::npos);
    CHECK(text.find("property double ny") != std::string::npos);
    CHECK(text.find("property double nz") != std::string::npos);
}

TEST_CASE("one-point cloud round-trips through both formats") {
    PointCloud cloud;
    cloud.positions = {{1.5, -2.25, 3.75}};
    cloud.colors = {{10, 20, 30}};
    cloud.normals = {{0, 0, 1}};
    for (PlyFormat fmt : {PlyFormat::ascii, PlyFormat::binary_le}) {
        const PointCloud back = parse_ply(write_ply(cloud, {fmt}));
        REQUIRE(back.size() == 1);
        CHECK(back.positions[0] == cloud.positions[0]);
        CHECK(back.colors[0] == cloud.colors[0]);
        CHECK(back.normals[0] == cloud.normals[0]);
    }
}

TEST_CASE("binary round-trip is byte-identical on a 10k random cloud") {
    PointCloud cloud = test::random_cloud(10000, 424242, 1000.0, true);
    const std::string first = write_ply(cloud, {PlyFormat::binary_le});
    const PointCloud parsed = parse_ply(first);
    const std::string second = write_ply(parsed, {PlyFormat::binary_le});
    CHECK(first == second);
    REQUIRE(parsed.size() == cloud.size());
    // Coordinates survive bit-exactly with the double-precision writer.
    for (std::size_t i = 0; i < cloud.size(); i += 997) {
        CHECK(parsed.positions[i] == cloud.positions[i]);
        CHECK(parsed.colors[i] == cloud.colors[i]);
    }
}

TEST_CASE("binary float32 files parse too") {
    PointCloud cloud = test::random_cloud(64, 3, 10.0, true);
    const std::string bytes = write_ply(cloud, {PlyFormat::binary_le, /*single_precision=*/true});
    const PointCloud back = parse_ply(bytes);
    REQUIRE(back.size() == 64);
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back.positions[i].x == static_cast<double>(static_cast<float>(cloud.positions[i].x)));
        CHECK(back.colors[i] == cloud.colors[i]);
    }
}

TEST_CASE("ascii round-trip holds to printed precision") {
    PointCloud cloud = test::random_cloud(128, 9, 3.0);
    const PointCloud back = parse_ply(write_ply(cloud, {PlyFormat::ascii}));
    REQUIRE(back.size() == cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i)
        CHECK(distance(back.positions[i], cloud.positions[i]) < 1e-8);
}

TEST_CASE("binary truncation is reported with a byte offset") {
    PointCloud cloud = test::random_cloud(4, 1);
    std::string bytes = write_ply(cloud, {PlyFormat::binary_le});
    bytes.resize(bytes.size() - 5);
    try {
        parse_ply(bytes);
        FAIL("expected PlyError");
    } catch (const PlyError& e) {
        CHECK(e.kind() == PlyErrorKind::vertex_count_mismatch);
        CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
}
