#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "prism/metrics.hpp"
#include "prism/ml/dataset.hpp"
#include "prism/ml/models.hpp"
#include "prism/ml/platt.hpp"
#include "prism/ml/scaler.hpp"

namespace prism::ml {

/// A base learner with its per-feature scaler (when required) and Platt
/// sigmoid, producing calibrated probabilities in (0,1).
struct CalibratedModel {
    BaseLearnerSpec spec;
    std::shared_ptr<const Model> model;
    std::optional<Scaler> scaler;
    PlattParams platt;

    double predict_proba(const std::vector<double>& row) const;
    std::vector<double> predict_proba(const Matrix& rows) const;
    /// Raw (pre-sigmoid) score after scaling; rank-equal to predict_proba.
    double raw_score(const std::vector<double>& row) const;

    nlohmann::json to_json() const;
    static CalibratedModel from_json(const nlohmann::json& j);
};

/// Fit scaler (if needed), gather k-fold CV scores, fit the Platt sigmoid on
/// them, then train the final model on all rows.
CalibratedModel calibrate_train(const BaseLearnerSpec& spec, const Matrix& X,
                                const std::vector<int>& y, int k, uint64_t seed);

struct StackedModel {
    std::vector<CalibratedModel> bases;  // refit on all rows for inference
    CalibratedModel meta;                // calibrated RBF-SVM over base probabilities
    uint64_t seed = 0;
    std::string schema_id;
    std::vector<int> oof_fold;  // fold of each training sample (leakage bookkeeping)
    Matrix oof_matrix;          // n x m out-of-fold meta-features

    nlohmann::json to_json() const;
    static StackedModel from_json(const nlohmann::json& j);
};

StackedModel stack_fit(const std::vector<BaseLearnerSpec>& specs, const FeatureTable& table,
                       int k = 5, uint64_t seed = 42);

struct StackPrediction {
    std::vector<double> prob;
    std::vector<int> label;  // 1 iff prob >= 0.5
};

StackPrediction stack_predict(const StackedModel& model, const Matrix& rows);

struct FoldResult {
    int fold = 0;
    std::vector<int> train_indices;
    std::vector<int> test_indices;
    std::vector<double> prob;  // aligned with test_indices
    metrics::ConfusionMatrix cm;
    metrics::MetricSet metrics;
};

struct EvaluationReport {
    std::vector<std::string> config;  // base kind names
    int k = 0;
    uint64_t seed = 0;
    std::vector<int> outer_assignment;
    std::vector<FoldResult> folds;
    metrics::ConfusionMatrix pooled_cm;
    metrics::MetricSet pooled;     // metrics over pooled outer predictions
    metrics::MetricSet fold_mean;  // mean of per-fold metrics
    bool leakage_audit_passed = false;
    double wall_seconds = 0.0;  // subset-specific work (meta training + prediction)

    nlohmann::json to_json() const;
};

/// Outer stratified k-fold; per fold a full stack_fit on the train folds and
/// stack_predict on the test fold.
EvaluationReport evaluate_cv(const std::vector<BaseLearnerSpec>& specs,
                             const FeatureTable& table, int k = 5, uint64_t seed = 42,
                             int jobs = 1);

/// Evaluate many base-learner subsets of one pool under identical folds and
/// identical per-base randomness (per-base sub-seeds do not depend on subset
/// membership, so shared base computations are exact, not approximate).
std::vector<EvaluationReport> evaluate_cv_multi(const std::vector<BaseLearnerSpec>& pool,
                                                const std::vector<std::vector<int>>& subsets,
                                                const FeatureTable& table, int k, uint64_t seed,
                                                int jobs = 1);

/// Recheck the recorded fold bookkeeping: outer folds partition the data,
/// every prediction's training set excludes its sample.
bool audit_no_leakage(const EvaluationReport& report);

}  // namespace prism::ml
