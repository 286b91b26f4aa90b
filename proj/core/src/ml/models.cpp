#include "prism/ml/models.hpp"

#include <cmath>
#include <stdexcept>

#include "models_impl.hpp"

namespace prism::ml {

std::string to_string(BaseKind k) {
    switch (k) {
        case BaseKind::RF: return "rf";
        case BaseKind::ET: return "et";
        case BaseKind::SVM_RBF: return "svm";
        case BaseKind::LOGREG: return "logreg";
        case BaseKind::KNN: return "knn";
        case BaseKind::GBDT: return "gbdt";
    }
    return "?";
}

BaseKind base_kind_from_string(const std::string& s) {
    if (s == "rf") return BaseKind::RF;
    if (s == "et") return BaseKind::ET;
    if (s == "svm") return BaseKind::SVM_RBF;
    if (s == "logreg") return BaseKind::LOGREG;
    if (s == "knn") return BaseKind::KNN;
    if (s == "gbdt") return BaseKind::GBDT;
    throw std::invalid_argument("unknown base learner: " + s);
}

BaseLearnerSpec BaseLearnerSpec::make(BaseKind kind, Hyperparameters hp) {
    BaseLearnerSpec s{kind, hp, false};
    s.needs_standardization =
        (kind == BaseKind::SVM_RBF || kind == BaseKind::LOGREG || kind == BaseKind::KNN);
    return s;
}

double rbf_gamma_heuristic(const Matrix& X) {
    if (X.empty() || X.front().empty()) throw std::invalid_argument("rbf_gamma: empty matrix");
    const double p = static_cast<double>(X.front().size());
    double sum = 0.0, sum2 = 0.0, n = 0.0;
    for (const auto& r : X)
        for (double v : r) {
            sum += v;
            sum2 += v * v;
            n += 1.0;
        }
    const double mu = sum / n;
    const double var = std::max(0.0, sum2 / n - mu * mu);
    return (var > 0.0) ? 1.0 / (p * var) : 1.0 / p;
}

namespace {

void check_training_input(const Matrix& X, const std::vector<int>& y) {
    if (X.size() != y.size()) throw std::invalid_argument("train_base: X/y size mismatch");
    if (X.size() < 2) throw std::invalid_argument("train_base: need n >= 2");
    bool pos = false, neg = false;
    for (int l : y) (l == 1 ? pos : neg) = true;
    if (!pos || !neg) throw std::invalid_argument("train_base: both classes must be present");
}

}  // namespace

std::unique_ptr<Model> train_base(const BaseLearnerSpec& spec, const Matrix& X,
                                  const std::vector<int>& y, uint64_t seed) {
    check_training_input(X, y);
    const auto& hp = spec.hp;
    switch (spec.kind) {
        case BaseKind::RF:
            return detail::train_forest(X, y, hp.forest_trees, /*bootstrap=*/true,
                                        /*random_thresholds=*/false, seed);
        case BaseKind::ET:
            return detail::train_forest(X, y, hp.forest_trees, /*bootstrap=*/false,
                                        /*random_thresholds=*/true, seed);
        case BaseKind::SVM_RBF:
            return detail::train_svm(X, y, hp.svm_c, rbf_gamma_heuristic(X), hp.svm_tol);
        case BaseKind::LOGREG:
            return detail::train_logreg(X, y, hp.logreg_lambda, hp.logreg_grad_tol,
                                        hp.logreg_max_iters);
        case BaseKind::KNN:
            return detail::train_knn(X, y, hp.knn_k);
        case BaseKind::GBDT:
            return detail::train_gbdt(X, y, hp.gbdt_trees, hp.gbdt_depth, hp.gbdt_learning_rate);
    }
    throw std::invalid_argument("train_base: unknown kind");
}

std::unique_ptr<Model> model_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind");
    if (kind == "forest") return detail::ForestModel::from_json(j);
    if (kind == "gbdt") return detail::GbdtModel::from_json(j);
    if (kind == "svm") return detail::SvmModel::from_json(j);
    if (kind == "logreg") return detail::LogRegModel::from_json(j);
    if (kind == "knn") return detail::KnnModel::from_json(j);
    throw std::invalid_argument("model_from_json: unknown kind " + kind);
}

std::vector<double> predict_scores(const Model& model, const Matrix& X) {
    std::vector<double> out;
    out.reserve(X.size());
    for (const auto& r : X) out.push_back(model.score(r));
    return out;
}

namespace detail {

nlohmann::json tree_to_json(const Tree& t) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : t.nodes)
        nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value});
    return nodes;
}

Tree tree_from_json(const nlohmann::json& j) {
    Tree t;
    for (const auto& n : j)
        t.nodes.push_back({n[0].get<int>(), n[1].get<double>(), n[2].get<int>(),
                           n[3].get<int>(), n[4].get<double>()});
    return t;
}

}  // namespace detail

}  // namespace prism::ml
