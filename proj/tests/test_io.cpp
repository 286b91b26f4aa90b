#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <random>

#include "prism/csv.hpp"
#include "prism/svg.hpp"

using namespace prism;
namespace fs = std::filesystem;

namespace {

std::string tmp_path(const char* name) {
    return (fs::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = (i == 0) ? 0.1 : (i == 1) ? 1.0 / 3.0 : u(rng);
        CHECK(std::strtod(io::format_double(v).c_str(), nullptr) == v);
    }
}

TEST_CASE("fnv1a known value") {
    CHECK(io::fnv1a_hex("") == "cbf29ce484222325");
}

TEST_CASE("feature CSV round trip is lossless and byte-stable") {
    const auto& schema = feat::default_schema();
    ml::FeatureTable t;
    t.schema_id = schema.schema_id;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-100, 100);
    for (int i = 0; i < 5; ++i) {
        std::vector<double> row(schema.size());
        for (double& v : row) v = u(rng);
        t.rows.push_back(std::move(row));
        t.labels.push_back(i % 2);
        t.ids.push_back("img_" + std::to_string(i));
    }
    const auto path = tmp_path("t_features.csv");
    io::write_feature_csv(path, t, schema);
    auto back = io::read_feature_csv(path, schema);
    CHECK(back.rows == t.rows);
    CHECK(back.labels == t.labels);
    CHECK(back.ids == t.ids);

    const std::string s1 = io::feature_csv_string(t, schema);
    const std::string s2 = io::feature_csv_string(back, schema);
    CHECK(s1 == s2);
}

TEST_CASE("manifest round trip and label validation") {
    std::vector<io::ManifestEntry> entries = {{"a", "/x/a.png", 1}, {"b", "/x/b.png", 0}};
    const auto path = tmp_path("t_manifest.csv");
    io::write_manifest(path, entries);
    auto back = io::read_manifest(path);
    REQUIRE(back.size() == 2);
    CHECK(back[0].image_id == "a");
    CHECK(back[1].label == 0);
    CHECK_THROWS(io::write_manifest(path, {{"a", "/x/a.png", 2}}));
}

TEST_CASE("schema JSON sidecar is written with the schema id") {
    const auto path = tmp_path("t_schema.json");
    io::write_schema_json(path, feat::default_schema());
    const auto text = io::read_text(path);
    CHECK(text.find(feat::default_schema().schema_id) != std::string::npos);
    CHECK(text.find("mn_circularity") != std::string::npos);
}

TEST_CASE("SVG chart renders deterministically with axes and legend") {
    std::vector<io::Series> series = {{"accuracy", {{1, 0.9}, {2, 0.95}, {3, 0.97}}, true},
                                      {"points", {{1, 0.8}, {2, 0.85}}, false}};
    const auto a = io::render_chart("t", "k", "metric", series);
    const auto b = io::render_chart("t", "k", "metric", series);
    CHECK(a == b);
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a.find("polyline") != std::string::npos);
    CHECK(a.find("accuracy") != std::string::npos);
    CHECK(a.find("circle") != std::string::npos);
}

TEST_CASE("atomic write replaces content without partial files") {
    const auto path = tmp_path("t_atomic.txt");
    io::atomic_write_text(path, "one");
    io::atomic_write_text(path, "two");
    CHECK(io::read_text(path) == "two");
    CHECK_FALSE(fs::exists(path + ".tmp"));
}
