#include "run_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace prism::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value) {
    const auto d = [&] { return std::stod(value); };
    const auto i = [&] { return std::stoi(value); };
    auto& s = cfg.segmentation;
    auto& h = cfg.learners;

    if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "folds") cfg.folds = i();
    else if (key == "jobs") cfg.jobs = i();
    else if (key == "segmentation.clahe_clip") s.clahe_clip = d();
    else if (key == "segmentation.clahe_grid") s.clahe_grid = i();
    else if (key == "segmentation.blur_sigma") s.blur_sigma = d();
    else if (key == "segmentation.crop_fraction") s.crop_fraction = d();
    else if (key == "segmentation.min_area_fraction") s.min_area_fraction = d();
    else if (key == "segmentation.max_area_fraction") s.max_area_fraction = d();
    else if (key == "segmentation.fallback_min_saturation") s.fallback_min_saturation = d();
    else if (key == "segmentation.refine_radius") s.refine_radius = i();
    else if (key == "segmentation.min_component_fraction") s.min_component_fraction = d();
    else if (key == "segmentation.kmeans_k") s.kmeans_k = i();
    else if (key == "zones.d1") cfg.zone_d1 = i();
    else if (key == "zones.d2") cfg.zone_d2 = i();
    else if (key == "learners.forest_trees") h.forest_trees = i();
    else if (key == "learners.svm_c") h.svm_c = d();
    else if (key == "learners.svm_tol") h.svm_tol = d();
    else if (key == "learners.logreg_lambda") h.logreg_lambda = d();
    else if (key == "learners.logreg_grad_tol") h.logreg_grad_tol = d();
    else if (key == "learners.logreg_max_iters") h.logreg_max_iters = i();
    else if (key == "learners.knn_k") h.knn_k = i();
    else if (key == "learners.gbdt_trees") h.gbdt_trees = i();
    else if (key == "learners.gbdt_depth") h.gbdt_depth = i();
    else if (key == "learners.gbdt_learning_rate") h.gbdt_learning_rate = d();
    else if (key == "ingest.label_regex") cfg.label_regex = value;
    else throw std::invalid_argument("unknown config key: " + key);
}

RunConfig load_run_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            apply_config_line(base, section.empty() ? key : section + "." + key, value);
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

nlohmann::json RunConfig::to_json() const {
    return {{"seed", seed},
            {"folds", folds},
            {"jobs", jobs},
            {"segmentation",
             {{"clahe_clip", segmentation.clahe_clip},
              {"clahe_grid", segmentation.clahe_grid},
              {"blur_sigma", segmentation.blur_sigma},
              {"crop_fraction", segmentation.crop_fraction},
              {"min_area_fraction", segmentation.min_area_fraction},
              {"max_area_fraction", segmentation.max_area_fraction},
              {"fallback_min_saturation", segmentation.fallback_min_saturation},
              {"refine_radius", segmentation.refine_radius},
              {"min_component_fraction", segmentation.min_component_fraction},
              {"kmeans_k", segmentation.kmeans_k}}},
            {"zones", {{"d1", zone_d1}, {"d2", zone_d2}}},
            {"learners",
             {{"forest_trees", learners.forest_trees},
              {"svm_c", learners.svm_c},
              {"svm_tol", learners.svm_tol},
              {"logreg_lambda", learners.logreg_lambda},
              {"logreg_grad_tol", learners.logreg_grad_tol},
              {"logreg_max_iters", learners.logreg_max_iters},
              {"knn_k", learners.knn_k},
              {"gbdt_trees", learners.gbdt_trees},
              {"gbdt_depth", learners.gbdt_depth},
              {"gbdt_learning_rate", learners.gbdt_learning_rate}}},
            {"ingest", {{"label_regex", label_regex}}}};
}

std::vector<ml::BaseLearnerSpec> parse_models(const std::string& csv,
                                              const ml::Hyperparameters& hp) {
    std::vector<ml::BaseLearnerSpec> specs;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        specs.push_back(ml::BaseLearnerSpec::make(ml::base_kind_from_string(item), hp));
    }
    if (specs.empty()) throw std::invalid_argument("--models: no learners given");
    for (size_t i = 0; i < specs.size(); ++i)
        for (size_t j = i + 1; j < specs.size(); ++j)
            if (specs[i].kind == specs[j].kind)
                throw std::invalid_argument("--models: duplicate learner " +
                                            ml::to_string(specs[i].kind));
    return specs;
}

}  // namespace prism::cli
