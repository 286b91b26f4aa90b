#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <regex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "prism/csv.hpp"
#include "prism/features.hpp"
#include "prism/imgproc.hpp"
#include "prism/ml/stacking.hpp"
#include "prism/rng.hpp"
#include "prism/segmentation.hpp"
#include "prism/svg.hpp"
#include "prism/synth.hpp"
#include "prism/zones.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using namespace prism;
using cli::RunConfig;

namespace {

// exit codes: 0 ok, 1 internal, 2 bad input, 3 only segmentation failures
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitSegFailures = 3;

const std::vector<ml::BaseKind> kAllKinds = {ml::BaseKind::RF,     ml::BaseKind::ET,
                                             ml::BaseKind::SVM_RBF, ml::BaseKind::LOGREG,
                                             ml::BaseKind::KNN,    ml::BaseKind::GBDT};

std::string sanitize_field(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
    return ext == ".png" || ext == ".tif" || ext == ".tiff" || ext == ".jpg" ||
           ext == ".jpeg" || ext == ".bmp";
}

void run_parallel(int n, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    for (int t = 0; t < std::min(jobs, n); ++t)
        workers.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& w : workers) w.join();
}

struct StageOutcome {
    std::vector<io::ManifestEntry> ok;
    std::vector<std::pair<std::string, std::string>> failures;  // id, message
    bool had_input_error = false;
    bool had_seg_failure = false;
};

void write_failure_log(const std::string& path,
                       const std::vector<std::pair<std::string, std::string>>& failures) {
    std::string out = "image_id,error\n";
    for (const auto& [id, msg] : failures)
        out += sanitize_field(id) + ',' + sanitize_field(msg) + '\n';
    io::atomic_write_text(path, out);
}

int outcome_exit_code(const StageOutcome& o) {
    if (o.had_input_error) return kExitInput;
    if (o.had_seg_failure) return kExitSegFailures;
    return kExitOk;
}

std::vector<io::ManifestEntry> load_dataset(const std::string& dataset,
                                            const RunConfig& cfg) {
    const fs::path p(dataset);
    if (fs::is_regular_file(p)) return io::read_manifest(dataset);
    if (!fs::is_directory(p)) throw std::runtime_error("dataset not found: " + dataset);

    std::vector<io::ManifestEntry> entries;
    // two labeled subdirectories named 0 and 1, else a filename label regex
    const fs::path dir0 = p / "0", dir1 = p / "1";
    if (fs::is_directory(dir0) && fs::is_directory(dir1)) {
        for (int label : {0, 1}) {
            std::vector<fs::path> files;
            for (const auto& e : fs::directory_iterator(label ? dir1 : dir0))
                if (e.is_regular_file() && is_image_file(e.path())) files.push_back(e.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files)
                entries.push_back({f.stem().string(), f.string(), label});
        }
    } else {
        const std::regex re(cfg.label_regex);
        std::vector<fs::path> files;
        for (const auto& e : fs::recursive_directory_iterator(p))
            if (e.is_regular_file() && is_image_file(e.path())) files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            std::smatch m;
            const std::string name = f.filename().string();
            if (std::regex_search(name, m, re) && m.size() >= 2) {
                entries.push_back({f.stem().string(), f.string(), std::stoi(m[1].str())});
            } else {
                std::cerr << "warning: no label in filename, skipping " << f << "\n";
            }
        }
    }
    return entries;
}

std::string metrics_header() {
    return "accuracy,balanced_accuracy,sensitivity,specificity,mcc,auc_roc,pr_auc";
}

std::string metrics_row(const metrics::MetricSet& m) {
    std::string out;
    for (double v : {m.accuracy, m.balanced_accuracy, m.sensitivity, m.specificity, m.mcc,
                     m.auc_roc, m.pr_auc}) {
        if (!out.empty()) out += ',';
        out += io::format_double(v);
    }
    return out;
}

void print_metrics(std::ostream& os, const std::string& tag, const metrics::MetricSet& m) {
    os << tag << ": accuracy=" << m.accuracy << " balanced=" << m.balanced_accuracy
       << " sens=" << m.sensitivity << " spec=" << m.specificity << " mcc=" << m.mcc
       << " auc_roc=" << m.auc_roc << " pr_auc=" << m.pr_auc << "\n";
}

// ---- verbs -----------------------------------------------------------------

int cmd_ingest(const RunConfig& cfg, const std::string& dataset, const std::string& out) {
    auto entries = load_dataset(dataset, cfg);
    int n0 = 0, n1 = 0;
    for (const auto& e : entries) (e.label ? n1 : n0)++;
    if (n0 == 0 || n1 == 0) {
        std::cerr << "error: need both classes, got " << n0 << " healthy / " << n1
                  << " lymphoblast\n";
        return kExitInput;
    }
    io::write_manifest((fs::path(out) / "manifest.csv").string(), entries);
    std::cout << "manifest: " << entries.size() << " images (" << n0 << " healthy, " << n1
              << " lymphoblast) -> " << out << "/manifest.csv\n";
    return kExitOk;
}

int cmd_synth(const RunConfig& cfg, int count, const std::string& out) {
    const fs::path root(out);
    fs::create_directories(root / "images");
    fs::create_directories(root / "truth");
    auto corpus = synth::synth_corpus(count, cfg.seed);
    std::vector<io::ManifestEntry> entries;
    for (const auto& s : corpus) {
        const fs::path img = root / "images" / (s.id + ".png");
        img::write_png(img.string(), s.image);
        img::write_mask_png((root / "truth" / (s.id + ".png")).string(), s.nucleus);
        entries.push_back({s.id, img.string(), s.label});
    }
    io::write_manifest((root / "manifest.csv").string(), entries);
    std::cout << "generated " << count << " synthetic cells -> " << out << "\n";
    return kExitOk;
}

StageOutcome for_each_image(const std::vector<io::ManifestEntry>& entries, int jobs,
                            const std::function<void(const io::ManifestEntry&)>& fn) {
    StageOutcome outcome;
    std::vector<int> status(entries.size(), 0);  // 0 ok, 1 seg, 2 input
    std::vector<std::string> errors(entries.size());
    run_parallel(static_cast<int>(entries.size()), jobs, [&](int i) {
        try {
            fn(entries[i]);
        } catch (const SegmentationFailure& e) {
            status[i] = 1;
            errors[i] = e.what();
        } catch (const std::exception& e) {
            status[i] = 2;
            errors[i] = e.what();
        }
    });
    for (size_t i = 0; i < entries.size(); ++i) {
        if (status[i] == 0) {
            outcome.ok.push_back(entries[i]);
        } else {
            outcome.failures.emplace_back(entries[i].image_id, errors[i]);
            if (status[i] == 1)
                outcome.had_seg_failure = true;
            else
                outcome.had_input_error = true;
        }
    }
    return outcome;
}

int cmd_segment(const RunConfig& cfg, const std::string& dataset, const std::string& out) {
    const auto entries = load_dataset(dataset, cfg);
    const fs::path root(out);
    fs::create_directories(root / "masks");
    fs::create_directories(root / "overlays");

    const auto outcome = for_each_image(entries, cfg.jobs, [&](const io::ManifestEntry& e) {
        const PlanarImage rgb = img::load_standardize_file(e.path);
        const seg::NucleusMask nucleus = seg::segment(rgb, cfg.segmentation);
        const auto zd = zones::decompose(nucleus,
                                         zones::approximate_cell_boundary(
                                             rgb, nucleus,
                                             zones::adaptive_radius(nucleus.area, cfg.zone_d2)),
                                         cfg.zone_d1, cfg.zone_d2);
        img::write_mask_png((root / "masks" / (e.image_id + ".png")).string(), nucleus.mask);
        img::write_png((root / "overlays" / (e.image_id + ".png")).string(),
                       zones::render_overlay(rgb, zd));
    });
    write_failure_log((root / "failures.csv").string(), outcome.failures);
    std::cout << "segmented " << outcome.ok.size() << "/" << entries.size() << " images, "
              << outcome.failures.size() << " failures -> " << out << "\n";
    return outcome_exit_code(outcome);
}

ml::FeatureTable extract_features(const RunConfig& cfg,
                                  const std::vector<io::ManifestEntry>& entries,
                                  StageOutcome& outcome) {
    const auto& schema = feat::default_schema();
    std::vector<std::optional<feat::FeatureVector>> vecs(entries.size());
    outcome = for_each_image(entries, cfg.jobs, [&](const io::ManifestEntry& e) {
        const size_t idx = static_cast<size_t>(&e - entries.data());
        const PlanarImage rgb = img::load_standardize_file(e.path);
        const seg::NucleusMask nucleus = seg::segment(rgb, cfg.segmentation);
        const BinaryMask cell = zones::approximate_cell_boundary(
            rgb, nucleus, zones::adaptive_radius(nucleus.area, cfg.zone_d2));
        const auto zd = zones::decompose(nucleus, cell, cfg.zone_d1, cfg.zone_d2);
        vecs[idx] = feat::build_vector(rgb, zd, schema);
    });

    ml::FeatureTable table;
    table.schema_id = schema.schema_id;
    for (size_t i = 0; i < entries.size(); ++i) {
        if (!vecs[i]) continue;
        table.rows.push_back(vecs[i]->values);
        table.labels.push_back(entries[i].label);
        table.ids.push_back(entries[i].image_id);
    }
    return table;
}

int cmd_extract(const RunConfig& cfg, const std::string& dataset, const std::string& out) {
    const auto entries = load_dataset(dataset, cfg);
    const fs::path root(out);
    fs::create_directories(root);
    StageOutcome outcome;
    const ml::FeatureTable table = extract_features(cfg, entries, outcome);
    io::write_feature_csv((root / "features.csv").string(), table, feat::default_schema());
    io::write_schema_json((root / "schema.json").string(), feat::default_schema());
    write_failure_log((root / "failures.csv").string(), outcome.failures);
    std::cout << "extracted " << table.n() << "/" << entries.size() << " feature rows -> "
              << out << "/features.csv\n";
    return outcome_exit_code(outcome);
}

struct LoadedFeatures {
    ml::FeatureTable table;
    std::string content_hash;
};

LoadedFeatures load_features(const std::string& path) {
    LoadedFeatures lf;
    lf.table = io::read_feature_csv(path, feat::default_schema());
    lf.content_hash = io::fnv1a_hex(io::read_text(path));
    return lf;
}

int cmd_train(const RunConfig& cfg, const std::string& features, const std::string& models,
              const std::string& out) {
    const auto lf = load_features(features);
    const auto specs = cli::parse_models(models, cfg.learners);
    const auto sm = ml::stack_fit(specs, lf.table, cfg.folds, cfg.seed);
    const nlohmann::json bundle = {{"format", "prism-bundle-v1"},
                                   {"run_config", cfg.to_json()},
                                   {"feature_table_hash", lf.content_hash},
                                   {"model", sm.to_json()}};
    fs::create_directories(out);
    io::atomic_write_text((fs::path(out) / "model.json").string(), bundle.dump(2) + "\n");
    std::cout << "trained " << models << " stack on " << lf.table.n() << " rows -> " << out
              << "/model.json\n";
    return kExitOk;
}

nlohmann::json wrap_report(const RunConfig& cfg, const std::string& hash,
                           const ml::EvaluationReport& rep) {
    return {{"format", "prism-evaluation-v1"},
            {"run_config", cfg.to_json()},
            {"feature_table_hash", hash},
            {"report", rep.to_json()}};
}

int cmd_evaluate(const RunConfig& cfg, const std::string& features, const std::string& models,
                 const std::string& out) {
    const auto lf = load_features(features);
    const auto specs = cli::parse_models(models, cfg.learners);
    const auto rep = ml::evaluate_cv(specs, lf.table, cfg.folds, cfg.seed, cfg.jobs);
    fs::create_directories(out);
    io::atomic_write_text((fs::path(out) / "report.json").string(),
                          wrap_report(cfg, lf.content_hash, rep).dump(2) + "\n");
    std::string names;
    for (const auto& c : rep.config) names += (names.empty() ? "" : "+") + c;
    std::cout << "configuration: " << names << " (" << cfg.folds << "-fold, seed " << cfg.seed
              << ")\n";
    print_metrics(std::cout, "pooled", rep.pooled);
    print_metrics(std::cout, "fold-mean", rep.fold_mean);
    std::cout << "leakage audit: " << (rep.leakage_audit_passed ? "passed" : "FAILED") << "\n";
    return rep.leakage_audit_passed ? kExitOk : kExitInternal;
}

std::vector<std::vector<int>> all_subsets(int m) {
    std::vector<std::vector<int>> subsets;
    for (int bits = 1; bits < (1 << m); ++bits) {
        std::vector<int> s;
        for (int b = 0; b < m; ++b)
            if (bits & (1 << b)) s.push_back(b);
        subsets.push_back(std::move(s));
    }
    return subsets;
}

std::string fold_hash(const ml::EvaluationReport& rep) {
    std::string bytes;
    for (int f : rep.outer_assignment) bytes += std::to_string(f) + ",";
    return io::fnv1a_hex(bytes);
}

int cmd_ablate(const RunConfig& cfg, const std::string& features, const std::string& out) {
    const auto lf = load_features(features);
    std::vector<ml::BaseLearnerSpec> pool;
    for (auto k : kAllKinds) pool.push_back(ml::BaseLearnerSpec::make(k, cfg.learners));
    const auto subsets = all_subsets(static_cast<int>(pool.size()));

    const auto t0 = std::chrono::steady_clock::now();
    auto reports = ml::evaluate_cv_multi(pool, subsets, lf.table, cfg.folds, cfg.seed, cfg.jobs);
    const double total_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string hash0 = fold_hash(reports.front());
    for (const auto& r : reports)
        if (fold_hash(r) != hash0 || !r.leakage_audit_passed)
            throw std::runtime_error("ablation invariant violated: folds or leakage audit");

    std::vector<int> order(reports.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (reports[a].pooled.accuracy != reports[b].pooled.accuracy)
            return reports[a].pooled.accuracy > reports[b].pooled.accuracy;
        if (reports[a].pooled.pr_auc != reports[b].pooled.pr_auc)
            return reports[a].pooled.pr_auc > reports[b].pooled.pr_auc;
        return reports[a].config < reports[b].config;  // stable, deterministic
    });

    fs::create_directories(out);
    std::string csv = "config,k," + metrics_header() + ",fold_hash\n";
    std::string timings = "config,k,wall_seconds\n";
    for (int idx : order) {
        const auto& r = reports[idx];
        std::string names;
        for (const auto& c : r.config) names += (names.empty() ? "" : "+") + c;
        const std::string k = std::to_string(r.config.size());
        csv += names + ',' + k + ',' + metrics_row(r.pooled) + ',' + hash0 + '\n';
        timings += names + ',' + k + ',' + io::format_double(r.wall_seconds) + '\n';
    }
    io::atomic_write_text((fs::path(out) / "ablation.csv").string(), csv);
    io::atomic_write_text((fs::path(out) / "ablation_timings.csv").string(), timings);

    nlohmann::json rows = nlohmann::json::array();
    for (int idx : order) {
        const auto& r = reports[idx];
        rows.push_back({{"config", r.config},
                        {"k", r.config.size()},
                        {"pooled", wrap_report(cfg, lf.content_hash, r)["report"]["pooled"]}});
    }
    const nlohmann::json summary = {{"format", "prism-ablation-v1"},
                                    {"run_config", cfg.to_json()},
                                    {"feature_table_hash", lf.content_hash},
                                    {"fold_hash", hash0},
                                    {"rows", rows}};
    io::atomic_write_text((fs::path(out) / "ablation.json").string(), summary.dump(2) + "\n");

    // best accuracy / MCC per ensemble size, and the AUC spread per size
    io::Series best_acc{"best accuracy", {}, true};
    io::Series best_mcc{"best MCC", {}, true};
    io::Series auc_pts{"AUC-ROC", {}, false};
    for (size_t k = 1; k <= pool.size(); ++k) {
        double ba = 0, bm = -1;
        for (const auto& r : reports) {
            if (r.config.size() != k) continue;
            ba = std::max(ba, r.pooled.accuracy);
            bm = std::max(bm, r.pooled.mcc);
        }
        best_acc.points.emplace_back(static_cast<double>(k), ba);
        best_mcc.points.emplace_back(static_cast<double>(k), bm);
    }
    for (const auto& r : reports)
        auc_pts.points.emplace_back(static_cast<double>(r.config.size()), r.pooled.auc_roc);
    io::write_chart_svg((fs::path(out) / "best_metric_vs_k.svg").string(),
                        "Best pooled metric by ensemble size", "ensemble size k", "metric",
                        {best_acc, best_mcc});
    io::write_chart_svg((fs::path(out) / "auc_distribution.svg").string(),
                        "AUC-ROC distribution by ensemble size", "ensemble size k", "AUC-ROC",
                        {auc_pts});

    const auto& top = reports[order.front()];
    std::string names;
    for (const auto& c : top.config) names += (names.empty() ? "" : "+") + c;
    std::cout << "ablation: " << reports.size() << " configurations in " << total_s << " s\n";
    std::cout << "best: " << names << "\n";
    print_metrics(std::cout, "pooled", top.pooled);
    return kExitOk;
}

int cmd_report(const std::string& in) {
    const std::string text = io::read_text(in);
    if (!text.empty() && text[0] == '{') {
        const auto j = nlohmann::json::parse(text);
        if (j.at("format") == "prism-evaluation-v1") {
            const auto& rep = j.at("report");
            std::string names;
            for (const auto& c : rep.at("config")) names += (names.empty() ? "" : "+") + c.get<std::string>();
            std::cout << "configuration: " << names << "\n";
            std::cout << "seed: " << rep.at("seed") << "  folds: " << rep.at("k") << "\n";
            std::cout << "feature table hash: " << j.at("feature_table_hash").get<std::string>()
                      << "\n";
            for (const auto& f : rep.at("folds")) {
                const auto& m = f.at("metrics");
                std::cout << "fold " << f.at("fold") << ": accuracy="
                          << m.at("accuracy").get<double>()
                          << " mcc=" << m.at("mcc").get<double>() << "\n";
            }
            for (const char* agg : {"pooled", "fold_mean"}) {
                const auto& m = rep.at(agg);
                std::cout << agg << ": accuracy=" << m.at("accuracy").get<double>()
                          << " mcc=" << m.at("mcc").get<double>()
                          << " auc_roc=" << m.at("auc_roc").get<double>()
                          << " pr_auc=" << m.at("pr_auc").get<double>() << "\n";
            }
            std::cout << "leakage audit: "
                      << (rep.at("leakage_audit_passed").get<bool>() ? "passed" : "FAILED")
                      << "\n";
            return kExitOk;
        }
        if (j.at("format") == "prism-ablation-v1") {
            std::cout << "ablation rows: " << j.at("rows").size() << "\n";
            int shown = 0;
            for (const auto& r : j.at("rows")) {
                std::string names;
                for (const auto& c : r.at("config")) names += (names.empty() ? "" : "+") + c.get<std::string>();
                std::cout << names << ": accuracy=" << r.at("pooled").at("accuracy").get<double>()
                          << " pr_auc=" << r.at("pooled").at("pr_auc").get<double>() << "\n";
                if (++shown == 10) break;
            }
            return kExitOk;
        }
        std::cerr << "error: unrecognized report format\n";
        return kExitInput;
    }
    std::cout << text;  // CSV passes through
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PRISM: perinuclear zonal features + stacked ensemble for single-cell "
                 "leukemia screening"};
    app.require_subcommand(1);

    std::string config_path, dataset, out = ".", features, models = "et,svm,logreg";
    std::string report_in;
    std::optional<uint64_t> seed_flag;
    std::optional<int> folds_flag, jobs_flag;
    int synth_count = 400;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value config file with [sections]");
        sub->add_option("--seed", seed_flag, "global random seed (default 42)");
        sub->add_option("--jobs", jobs_flag, "worker threads");
    };

    auto* ingest = app.add_subcommand("ingest", "scan a dataset tree into a manifest CSV");
    ingest->add_option("--dataset", dataset, "dataset root")->required();
    ingest->add_option("--out", out, "output directory");
    add_common(ingest);

    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic labeled cell corpus");
    synth_cmd->add_option("--count", synth_count, "number of images (default 400)");
    synth_cmd->add_option("--out", out, "output directory")->required();
    add_common(synth_cmd);

    auto* segment = app.add_subcommand("segment", "nucleus masks + zone overlays");
    segment->add_option("--dataset", dataset, "manifest CSV or dataset root")->required();
    segment->add_option("--out", out, "output directory")->required();
    add_common(segment);

    auto* extract = app.add_subcommand("extract", "feature CSV + schema JSON");
    extract->add_option("--dataset", dataset, "manifest CSV or dataset root")->required();
    extract->add_option("--out", out, "output directory")->required();
    add_common(extract);

    auto* train = app.add_subcommand("train", "fit the calibrated stacking ensemble");
    train->add_option("--features", features, "feature CSV")->required();
    train->add_option("--out", out, "output directory")->required();
    train->add_option("--models", models, "comma list from rf,et,svm,logreg,knn,gbdt");
    train->add_option("--folds", folds_flag, "CV folds (default 5)");
    add_common(train);

    auto* evaluate = app.add_subcommand("evaluate", "cross-validated evaluation report");
    evaluate->add_option("--features", features, "feature CSV")->required();
    evaluate->add_option("--out", out, "output directory")->required();
    evaluate->add_option("--models", models, "comma list from rf,et,svm,logreg,knn,gbdt");
    evaluate->add_option("--folds", folds_flag, "CV folds (default 5)");
    add_common(evaluate);

    auto* ablate = app.add_subcommand("ablate", "evaluate all 63 base-learner subsets");
    ablate->add_option("--features", features, "feature CSV")->required();
    ablate->add_option("--out", out, "output directory")->required();
    ablate->add_option("--folds", folds_flag, "CV folds (default 5)");
    add_common(ablate);

    auto* report = app.add_subcommand("report", "pretty-print a report or ablation summary");
    report->add_option("--in", report_in, "report.json / ablation.json / CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = cli::load_run_config(config_path);
        if (seed_flag) cfg.seed = *seed_flag;
        if (folds_flag) cfg.folds = *folds_flag;
        if (jobs_flag) cfg.jobs = *jobs_flag;

        if (ingest->parsed()) return cmd_ingest(cfg, dataset, out);
        if (synth_cmd->parsed()) return cmd_synth(cfg, synth_count, out);
        if (segment->parsed()) return cmd_segment(cfg, dataset, out);
        if (extract->parsed()) return cmd_extract(cfg, dataset, out);
        if (train->parsed()) return cmd_train(cfg, features, models, out);
        if (evaluate->parsed()) return cmd_evaluate(cfg, features, models, out);
        if (ablate->parsed()) return cmd_ablate(cfg, features, out);
        if (report->parsed()) return cmd_report(report_in);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
