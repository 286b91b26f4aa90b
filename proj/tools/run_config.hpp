#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "prism/ml/models.hpp"
#include "prism/segmentation.hpp"

namespace prism::cli {

/// Every tunable of the pipeline, loadable from a key=value config file with
/// [section] headers and embedded verbatim into every report.
struct RunConfig {
    uint64_t seed = 42;
    int folds = 5;
    int jobs = 1;

    seg::SegmentationConfig segmentation;
    int zone_d1 = 10;
    int zone_d2 = 24;

    ml::Hyperparameters learners;

    // capture group 1 must be the 0/1 label (ALL-IDB2 ends in _0/_1)
    std::string label_regex = "_([01])\\.[A-Za-z]+$";

    nlohmann::json to_json() const;
};

/// Parse "[section]\nkey=value" text; keys are "section.key" (or bare "key"
/// before any section). Unknown keys are an error.
RunConfig load_run_config(const std::string& path, RunConfig base = {});
void apply_config_line(RunConfig& cfg, const std::string& dotted_key, const std::string& value);

/// "--models et,svm,logreg" -> specs; empty/invalid names are an error.
std::vector<ml::BaseLearnerSpec> parse_models(const std::string& csv,
                                              const ml::Hyperparameters& hp);

}  // namespace prism::cli
