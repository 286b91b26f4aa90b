#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "prism/csv.hpp"

namespace fs = std::filesystem;
using prism::io::read_text;

namespace {

const std::string kCli = PRISM_CLI_PATH;

struct Workspace {
    fs::path root;
    Workspace() {
        root = fs::temp_directory_path() / "prism_cli_test";
        fs::remove_all(root);
        fs::create_directories(root);
    }
    std::string operator/(const std::string& rel) const { return (root / rel).string(); }
};

int run(const std::string& args) {
    const int rc = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

int count_lines(const std::string& path) {
    std::istringstream in(read_text(path));
    std::string line;
    int n = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++n;
    return n;
}

Workspace& ws() {
    static Workspace w;
    return w;
}

}  // namespace

TEST_CASE("synth + ingest produce a balanced manifest") {
    REQUIRE(run("synth --count 20 --out " + (ws() / "data")) == 0);
    CHECK(count_lines(ws() / "data/manifest.csv") == 21);  // header + 20

    // re-ingest from the image tree via the filename label suffix
    REQUIRE(run("ingest --dataset " + (ws() / "data/images") + " --out " + (ws() / "ingest")) ==
            0);
    auto entries = prism::io::read_manifest(ws() / "ingest/manifest.csv");
    int pos = 0;
    for (const auto& e : entries) pos += e.label;
    CHECK(entries.size() == 20);
    CHECK(pos == 10);
}

TEST_CASE("segment writes masks, overlays and an empty failure log") {
    REQUIRE(run("segment --dataset " + (ws() / "data/manifest.csv") + " --out " +
                (ws() / "seg")) == 0);
    int masks = 0;
    for (const auto& e : fs::directory_iterator(ws() / "seg/masks")) (void)e, ++masks;
    CHECK(masks == 20);
    CHECK(count_lines(ws() / "seg/failures.csv") == 1);  // header only
}

TEST_CASE("extract emits one row per successful segmentation, byte-identically") {
    REQUIRE(run("extract --dataset " + (ws() / "data/manifest.csv") + " --out " +
                (ws() / "feat")) == 0);
    CHECK(count_lines(ws() / "feat/features.csv") == 21);
    REQUIRE(run("extract --dataset " + (ws() / "data/manifest.csv") + " --out " +
                (ws() / "feat_again")) == 0);
    CHECK(read_text(ws() / "feat/features.csv") == read_text(ws() / "feat_again/features.csv"));
}

TEST_CASE("evaluate names the configuration and embeds config + hash") {
    REQUIRE(run("evaluate --features " + (ws() / "feat/features.csv") + " --out " +
                (ws() / "eval") + " --models et,svm,logreg") == 0);
    const auto j = nlohmann::json::parse(read_text(ws() / "eval/report.json"));
    CHECK(j.at("report").at("config") ==
          std::vector<std::string>{"et", "svm", "logreg"});
    CHECK(j.contains("run_config"));
    CHECK(j.at("feature_table_hash").get<std::string>().size() == 16);
    CHECK(j.at("report").at("leakage_audit_passed") == true);
}

TEST_CASE("train writes a model bundle") {
    REQUIRE(run("train --features " + (ws() / "feat/features.csv") + " --out " +
                (ws() / "model") + " --models et,logreg") == 0);
    const auto j = nlohmann::json::parse(read_text(ws() / "model/model.json"));
    CHECK(j.at("model").at("bases").size() == 2);
}

TEST_CASE("ablate: 63 rows, shared folds, k=1 rows match solo evaluate") {
    REQUIRE(run("ablate --features " + (ws() / "feat/features.csv") + " --out " +
                (ws() / "abl")) == 0);
    CHECK(count_lines(ws() / "abl/ablation.csv") == 64);
    CHECK(fs::exists(ws() / "abl/best_metric_vs_k.svg"));
    CHECK(fs::exists(ws() / "abl/auc_distribution.svg"));

    // every k=1 row equals a standalone evaluate run of that learner
    std::istringstream in(read_text(ws() / "abl/ablation.csv"));
    std::string line;
    std::getline(in, line);  // header
    int singles = 0;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string config, k, acc;
        std::getline(row, config, ',');
        std::getline(row, k, ',');
        std::getline(row, acc, ',');
        if (k != "1") continue;
        ++singles;
        REQUIRE(run("evaluate --features " + (ws() / "feat/features.csv") + " --out " +
                    (ws() / ("solo_" + config)) + " --models " + config) == 0);
        const auto j =
            nlohmann::json::parse(read_text(ws() / ("solo_" + config + "/report.json")));
        CHECK(j.at("report").at("pooled").at("accuracy").get<double>() ==
              doctest::Approx(std::stod(acc)).epsilon(1e-12));
    }
    CHECK(singles == 6);
}

TEST_CASE("evaluate reruns are byte-identical") {
    REQUIRE(run("evaluate --features " + (ws() / "feat/features.csv") + " --out " +
                (ws() / "eval2") + " --models et,svm,logreg") == 0);
    CHECK(read_text(ws() / "eval/report.json") == read_text(ws() / "eval2/report.json"));
}

TEST_CASE("config file values are honored and overridden by flags") {
    std::ofstream cfg(ws() / "run.cfg");
    cfg << "seed = 7\n[zones]\nd1 = 10\nd2 = 24\n";
    cfg.close();
    REQUIRE(run("evaluate --features " + (ws() / "feat/features.csv") + " --out " +
                (ws() / "eval_cfg") + " --models et --config " + (ws() / "run.cfg")) == 0);
    const auto j = nlohmann::json::parse(read_text(ws() / "eval_cfg/report.json"));
    CHECK(j.at("run_config").at("seed") == 7);
    REQUIRE(run("evaluate --features " + (ws() / "feat/features.csv") + " --out " +
                (ws() / "eval_cfg2") + " --models et --config " + (ws() / "run.cfg") +
                " --seed 9") == 0);
    const auto j2 = nlohmann::json::parse(read_text(ws() / "eval_cfg2/report.json"));
    CHECK(j2.at("run_config").at("seed") == 9);
}

TEST_CASE("report verb prints a summary") {
    CHECK(run("report --in " + (ws() / "eval/report.json")) == 0);
    CHECK(run("report --in " + (ws() / "abl/ablation.json")) == 0);
}

TEST_CASE("input errors exit with the input-error code") {
    CHECK(run("evaluate --features /nonexistent.csv --out " + (ws() / "x")) == 2);
    CHECK(run("ingest --dataset /nonexistent_dir --out " + (ws() / "x")) == 2);
}
