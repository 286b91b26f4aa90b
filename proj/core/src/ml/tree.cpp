#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "models_impl.hpp"

namespace prism::ml::detail {

namespace {

struct TreeBuilder {
    const Matrix& X;
    const std::vector<int>& y;
    int mtry;
    bool random_thresholds;
    std::mt19937_64& rng;
    Tree tree;

    static double gini_impurity(double n_pos, double n) {
        if (n <= 0.0) return 0.0;
        const double p = n_pos / n;
        return 2.0 * p * (1.0 - p);
    }

    int make_leaf(const std::vector<int>& idx) {
        double pos = 0;
        for (int i : idx) pos += y[i];
        TreeNode n;
        n.value = pos / static_cast<double>(idx.size());
        tree.nodes.push_back(n);
        return static_cast<int>(tree.nodes.size()) - 1;
    }

    std::vector<int> sample_features(size_t p) {
        std::vector<int> feats(p);
        std::iota(feats.begin(), feats.end(), 0);
        // partial Fisher-Yates for the first mtry entries
        for (int i = 0; i < mtry && i < static_cast<int>(p); ++i) {
            std::uniform_int_distribution<int> d(i, static_cast<int>(p) - 1);
            std::swap(feats[i], feats[d(rng)]);
        }
        feats.resize(std::min<size_t>(mtry, p));
        return feats;
    }

    int build(std::vector<int> idx) {
        const double n = static_cast<double>(idx.size());
        double pos = 0;
        for (int i : idx) pos += y[i];
        if (idx.size() < 2 || pos == 0.0 || pos == n) return make_leaf(idx);

        const double parent_impurity = gini_impurity(pos, n);
        int best_feat = -1;
        double best_thr = 0.0, best_gain = 1e-12;

        for (int f : sample_features(X.front().size())) {
            if (random_thresholds) {
                double mn = X[idx[0]][f], mx = mn;
                for (int i : idx) {
                    mn = std::min(mn, X[i][f]);
                    mx = std::max(mx, X[i][f]);
                }
                if (!(mx > mn)) continue;
                std::uniform_real_distribution<double> u(mn, mx);
                const double thr = u(rng);
                double ln = 0, lpos = 0;
                for (int i : idx) {
                    if (X[i][f] <= thr) {
                        ln += 1.0;
                        lpos += y[i];
                    }
                }
                const double rn = n - ln;
                if (ln == 0.0 || rn == 0.0) continue;
                const double gain = parent_impurity -
                                    (ln / n) * gini_impurity(lpos, ln) -
                                    (rn / n) * gini_impurity(pos - lpos, rn);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_feat = f;
                    best_thr = thr;
                }
            } else {
                std::vector<int> order = idx;
                std::sort(order.begin(), order.end(),
                          [&](int a, int b) { return X[a][f] < X[b][f]; });
                double ln = 0, lpos = 0;
                for (size_t s = 0; s + 1 < order.size(); ++s) {
                    ln += 1.0;
                    lpos += y[order[s]];
                    const double v = X[order[s]][f];
                    const double vn = X[order[s + 1]][f];
                    if (!(vn > v)) continue;
                    const double rn = n - ln;
                    const double gain = parent_impurity -
                                        (ln / n) * gini_impurity(lpos, ln) -
                                        (rn / n) * gini_impurity(pos - lpos, rn);
                    if (gain > best_gain) {
                        best_gain = gain;
                        best_feat = f;
                        best_thr = (v + vn) / 2.0;
                    }
                }
            }
        }
        if (best_feat < 0) return make_leaf(idx);

        std::vector<int> left, right;
        for (int i : idx)
            (X[i][best_feat] <= best_thr ? left : right).push_back(i);
        if (left.empty() || right.empty()) return make_leaf(idx);

        TreeNode node;
        node.feature = best_feat;
        node.threshold = best_thr;
        tree.nodes.push_back(node);
        const int self = static_cast<int>(tree.nodes.size()) - 1;
        const int l = build(std::move(left));
        const int r = build(std::move(right));
        tree.nodes[self].left = l;
        tree.nodes[self].right = r;
        return self;
    }
};

}  // namespace

std::unique_ptr<ForestModel> train_forest(const Matrix& X, const std::vector<int>& y,
                                          int n_trees, bool bootstrap, bool random_thresholds,
                                          uint64_t seed) {
    const int n = static_cast<int>(X.size());
    const int p = static_cast<int>(X.front().size());
    const int mtry = std::max(1, static_cast<int>(std::lround(std::sqrt(p))));

    auto model = std::make_unique<ForestModel>();
    model->trees.reserve(n_trees);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < n_trees; ++t) {
        std::vector<int> idx(n);
        if (bootstrap) {
            std::uniform_int_distribution<int> d(0, n - 1);
            for (int i = 0; i < n; ++i) idx[i] = d(rng);
        } else {
            std::iota(idx.begin(), idx.end(), 0);
        }
        TreeBuilder builder{X, y, mtry, random_thresholds, rng, {}};
        builder.build(std::move(idx));
        model->trees.push_back(std::move(builder.tree));
    }
    return model;
}

nlohmann::json ForestModel::to_json() const {
    nlohmann::json trees_j = nlohmann::json::array();
    for (const auto& t : trees) trees_j.push_back(tree_to_json(t));
    return {{"kind", "forest"}, {"trees", trees_j}};
}

std::unique_ptr<ForestModel> ForestModel::from_json(const nlohmann::json& j) {
    auto m = std::make_unique<ForestModel>();
    for (const auto& t : j.at("trees")) m->trees.push_back(tree_from_json(t));
    return m;
}

}  // namespace prism::ml::detail
