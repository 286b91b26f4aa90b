#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "prism/ml/dataset.hpp"

namespace prism::ml {

enum class BaseKind { RF, ET, SVM_RBF, LOGREG, KNN, GBDT };

std::string to_string(BaseKind k);
BaseKind base_kind_from_string(const std::string& s);

struct Hyperparameters {
    // forests
    int forest_trees = 300;
    // SVM
    double svm_c = 1.0;
    double svm_tol = 1e-3;
    // logistic regression
    double logreg_lambda = 1.0;
    double logreg_grad_tol = 1e-6;
    int logreg_max_iters = 10000;
    // KNN
    int knn_k = 5;
    // GBDT
    int gbdt_trees = 200;
    int gbdt_depth = 3;
    double gbdt_learning_rate = 0.1;
};

struct BaseLearnerSpec {
    BaseKind kind;
    Hyperparameters hp;
    bool needs_standardization = false;

    static BaseLearnerSpec make(BaseKind kind, Hyperparameters hp = {});
};

/// Trained model with a positively oriented real-valued score.
class Model {
public:
    virtual ~Model() = default;
    virtual double score(std::span<const double> row) const = 0;
    virtual nlohmann::json to_json() const = 0;
};

/// Train one Level-0 learner with its documented default hyperparameters.
/// Throws std::invalid_argument on single-class labels or n < 2.
std::unique_ptr<Model> train_base(const BaseLearnerSpec& spec, const Matrix& X,
                                  const std::vector<int>& y, uint64_t seed);

std::unique_ptr<Model> model_from_json(const nlohmann::json& j);

std::vector<double> predict_scores(const Model& model, const Matrix& X);

/// gamma = 1 / (p * pooled variance of all matrix entries); falls back to
/// 1/p when the matrix is constant.
double rbf_gamma_heuristic(const Matrix& X);

// Logistic-regression objective: mean-free sum of log-losses plus
// 0.5*lambda*||w||^2 (bias unpenalized). Exposed for finite-difference checks.
double logreg_loss_and_grad(const Matrix& X, const std::vector<int>& y, double lambda,
                            std::span<const double> w, double b,
                            std::vector<double>& grad_w, double& grad_b);

}  // namespace prism::ml
