// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#include <catch2/catch_amalgamated.hpp>

#include "pcqa/io/csv.hpp"
#include "pcqa/io/digest.hpp"
#include "pcqa/io/json_writer.hpp"
#include "pcqa/io/toml_lite.hpp"
#include "pcqa/metrics/registry.hpp"

using namespace pcqa;

TEST_CASE("csv parsing handles quotes and escapes") {
    const io::CsvTable t = io::parse_csv(std::string(
        "a,b,c\n"
        "1,\"two, two\",3\n"
        "4,\"say \"\"hi\"\"\",6\r\n"));
    REQUIRE(t.header.size() == 3);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][1] == "two, two");
    CHECK(t.rows[1][1] == "say \"hi\"");
    CHECK(t.column("b") == 1);
    CHECK(t.column("missing") == -1);
    CHECK_THROWS(t.require_column("missing"));
}

TEST_CASE("csv writing round-trips through the parser") {
    const std::vector<std::string> fields = {"plain", "with,comma", "with\"quote", "with\nnewline"};
    const std::string text = "h1,h2,h3,h4\n" + io::csv_row(fields);
    const io::CsvTable t = io::parse_csv(text);
    REQUIRE(t.rows.size() == 2);  // the embedded newline splits rows; quoting is not multi-line
    // multi-line fields are out of scope; the first three survive
    CHECK(t.rows[0][0] == "plain");
    CHECK(t.rows[0][1] == "with,comma");
    CHECK(t.rows[0][2] == "with\"quote");
}

TEST_CASE("toml subset covers profiles") {
    const io::TomlDocument doc = io::parse_toml(std::string(
        "# comment\n"
        "top = 3\n"
        "[pcqm]\n"
        "weights = [0.1, 0.2, 0.3]  # trailing comment\n"
        "radius_rel = 0.004\n"
        "name = \"lab\"\n"
        "flag = true\n"));
    CHECK(doc.number("", "top") == 3.0);
    CHECK(doc.array("pcqm", "weights") == std::vector<double>{0.1, 0.2, 0.3});
    CHECK(doc.number("pcqm", "radius_rel") == 0.004);
    CHECK(doc.string("pcqm", "name") == "lab");
    CHECK(doc.boolean("pcqm", "flag"));
    CHECK(doc.has("pcqm", "weights"));
    CHECK_FALSE(doc.has("pcqm", "nope"));
    CHECK_THROWS(doc.get("x", "y"));
}

TEST_CASE("toml errors carry line numbers") {
    try {
        io::parse_toml(std::string("ok = 1\nbad value here\n"));
        FAIL("expected error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("shipped default profile parses into a config") {
    const std::string path = std::string(PCQA_SHARE_DIR) + "/profiles/default.toml";
    const metrics::MetricConfig cfg = metrics::config_from_profile(io::read_toml_file(path));
    REQUIRE(cfg.pcqm_weights.size() == 8);
    CHECK(cfg.pcqm_weights[3] == 0.9771);
    REQUIRE(cfg.pcmrr_weights.size() == 21);
    CHECK(cfg.k_neighbors == 12);
    CHECK(cfg.p2d_k == 31);
    CHECK(cfg.symmetric);
    CHECK(cfg.normal_radius == 5.0);
    CHECK(cfg.graph_channel_pooling[0] == 0.75);
}

TEST_CASE("json writer emits deterministic ordered output") {
    io::JsonWriter w;
    w.begin_object();
    w.key("b").value(1.0 / 3.0);
    w.key("a").begin_array().value(1).value(true).value("x\"y").null().end_array();
    w.key("nested").begin_object().key("inf").value(std::numeric_limits<double>::infinity()).end_object();
    w.end_object();
    CHECK(std::move(w).str() ==
          R"({"b":0.333333333,"a":[1,true,"x\"y",null],"nested":{"inf":null}})");
}

TEST_CASE("json numbers use nine significant digits") {
    CHECK(io::json_number(1.0) == "1");
    CHECK(io::json_number(0.5) == "0.5");
    CHECK(io::json_number(123456789.123) == "123456789");
    CHECK(io::json_number(1.7299999999) == "1.73");
}

TEST_CASE("digests are stable and sensitive") {
    const std::string a = io::digest_string("hello");
    CHECK(a == io::digest_string("hello"));
    CHECK(a != io::digest_string("hello!"));
    CHECK(a.size() == 16);
}
