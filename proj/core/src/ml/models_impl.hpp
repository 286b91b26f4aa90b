#pragma once

// Concrete learner types shared between the per-learner translation units and
// the JSON (de)serialization dispatcher.

#include <nlohmann/json.hpp>

#include "prism/ml/models.hpp"

namespace prism::ml::detail {

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;  // leaf payload
};

struct Tree {
    std::vector<TreeNode> nodes;

    double predict(std::span<const double> row) const {
        int i = 0;
        while (nodes[i].feature >= 0)
            i = (row[nodes[i].feature] <= nodes[i].threshold) ? nodes[i].left : nodes[i].right;
        return nodes[i].value;
    }
};

nlohmann::json tree_to_json(const Tree& t);
Tree tree_from_json(const nlohmann::json& j);

class ForestModel : public Model {
public:
    std::vector<Tree> trees;

    double score(std::span<const double> row) const override {
        double s = 0.0;
        for (const auto& t : trees) s += t.predict(row);
        return trees.empty() ? 0.5 : s / trees.size();
    }
    nlohmann::json to_json() const override;
    static std::unique_ptr<ForestModel> from_json(const nlohmann::json& j);
};

class GbdtModel : public Model {
public:
    double f0 = 0.0;
    double learning_rate = 0.1;
    std::vector<Tree> trees;

    double score(std::span<const double> row) const override {
        double f = f0;
        for (const auto& t : trees) f += learning_rate * t.predict(row);
        return 1.0 / (1.0 + std::exp(-f));
    }
    nlohmann::json to_json() const override;
    static std::unique_ptr<GbdtModel> from_json(const nlohmann::json& j);
};

class SvmModel : public Model {
public:
    Matrix support_vectors;
    std::vector<double> dual_coef;  // alpha_i * y_i
    double bias = 0.0;
    double gamma = 1.0;

    double score(std::span<const double> row) const override;
    nlohmann::json to_json() const override;
    static std::unique_ptr<SvmModel> from_json(const nlohmann::json& j);
};

class LogRegModel : public Model {
public:
    std::vector<double> weights;
    double bias = 0.0;

    double score(std::span<const double> row) const override {
        double z = bias;
        for (size_t j = 0; j < weights.size(); ++j) z += weights[j] * row[j];
        return 1.0 / (1.0 + std::exp(-z));
    }
    nlohmann::json to_json() const override;
    static std::unique_ptr<LogRegModel> from_json(const nlohmann::json& j);
};

class KnnModel : public Model {
public:
    Matrix train_rows;
    std::vector<int> train_labels;
    int k = 5;

    double score(std::span<const double> row) const override;
    nlohmann::json to_json() const override;
    static std::unique_ptr<KnnModel> from_json(const nlohmann::json& j);
};

// Trainers (seed use is documented per learner; GBDT is deterministic).
std::unique_ptr<ForestModel> train_forest(const Matrix& X, const std::vector<int>& y,
                                          int n_trees, bool bootstrap, bool random_thresholds,
                                          uint64_t seed);
std::unique_ptr<GbdtModel> train_gbdt(const Matrix& X, const std::vector<int>& y, int n_trees,
                                      int max_depth, double learning_rate);
std::unique_ptr<SvmModel> train_svm(const Matrix& X, const std::vector<int>& y, double C,
                                    double gamma, double tol);
std::unique_ptr<LogRegModel> train_logreg(const Matrix& X, const std::vector<int>& y,
                                          double lambda, double grad_tol, int max_iters);
std::unique_ptr<KnnModel> train_knn(const Matrix& X, const std::vector<int>& y, int k);

}  // namespace prism::ml::detail
