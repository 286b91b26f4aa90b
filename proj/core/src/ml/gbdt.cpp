#include <algorithm>
#include <cmath>
#include <numeric>

#include "models_impl.hpp"

namespace prism::ml::detail {

namespace {

// Depth-limited least-squares tree on gradient residuals with Newton leaf
// values sum(residual)/sum(hessian).
struct GbdtTreeBuilder {
    const Matrix& X;
    const std::vector<double>& residual;
    const std::vector<double>& hessian;
    const std::vector<std::vector<int>>& sorted_by_feature;  // per feature, row order
    int max_depth;
    Tree tree;

    int make_leaf(const std::vector<char>& member) {
        double sr = 0.0, sh = 0.0;
        for (size_t i = 0; i < member.size(); ++i) {
            if (!member[i]) continue;
            sr += residual[i];
            sh += hessian[i];
        }
        TreeNode n;
        n.value = (sh > 1e-12) ? sr / sh : 0.0;
        n.value = std::clamp(n.value, -10.0, 10.0);
        tree.nodes.push_back(n);
        return static_cast<int>(tree.nodes.size()) - 1;
    }

    int build(const std::vector<char>& member, int count, int depth) {
        if (depth >= max_depth || count < 2) return make_leaf(member);

        double total_r = 0.0;
        for (size_t i = 0; i < member.size(); ++i)
            if (member[i]) total_r += residual[i];

        const int p = static_cast<int>(X.front().size());
        int best_feat = -1;
        double best_thr = 0.0, best_score = 1e-12;
        // variance-reduction proxy: sum_l^2/n_l + sum_r^2/n_r - sum^2/n
        const double base = total_r * total_r / count;
        for (int f = 0; f < p; ++f) {
            double lsum = 0.0;
            int ln = 0;
            const auto& order = sorted_by_feature[f];
            for (size_t s = 0; s < order.size(); ++s) {
                const int i = order[s];
                if (!member[i]) continue;
                lsum += residual[i];
                ++ln;
                if (ln >= count) break;
                // next member value decides whether a threshold fits here
                size_t t = s + 1;
                while (t < order.size() && !member[order[t]]) ++t;
                if (t >= order.size()) break;
                const double v = X[i][f], vn = X[order[t]][f];
                if (!(vn > v)) continue;
                const int rn = count - ln;
                const double rsum = total_r - lsum;
                const double score = lsum * lsum / ln + rsum * rsum / rn - base;
                if (score > best_score) {
                    best_score = score;
                    best_feat = f;
                    best_thr = (v + vn) / 2.0;
                }
            }
        }
        if (best_feat < 0) return make_leaf(member);

        std::vector<char> left(member.size(), 0), right(member.size(), 0);
        int ln = 0, rn = 0;
        for (size_t i = 0; i < member.size(); ++i) {
            if (!member[i]) continue;
            if (X[i][best_feat] <= best_thr) {
                left[i] = 1;
                ++ln;
            } else {
                right[i] = 1;
                ++rn;
            }
        }
        TreeNode node;
        node.feature = best_feat;
        node.threshold = best_thr;
        tree.nodes.push_back(node);
        const int self = static_cast<int>(tree.nodes.size()) - 1;
        const int l = build(left, ln, depth + 1);
        const int r = build(right, rn, depth + 1);
        tree.nodes[self].left = l;
        tree.nodes[self].right = r;
        return self;
    }
};

}  // namespace

std::unique_ptr<GbdtModel> train_gbdt(const Matrix& X, const std::vector<int>& y, int n_trees,
                                      int max_depth, double learning_rate) {
    const int n = static_cast<int>(X.size());
    const int p = static_cast<int>(X.front().size());

    std::vector<std::vector<int>> sorted_by_feature(p);
    for (int f = 0; f < p; ++f) {
        auto& order = sorted_by_feature[f];
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return X[a][f] < X[b][f]; });
    }

    double pos = 0;
    for (int l : y) pos += l;
    auto model = std::make_unique<GbdtModel>();
    model->learning_rate = learning_rate;
    model->f0 = std::log(std::clamp(pos / (n - pos), 1e-6, 1e6));

    std::vector<double> f(n, model->f0), residual(n), hessian(n);
    std::vector<char> all(n, 1);
    for (int t = 0; t < n_trees; ++t) {
        for (int i = 0; i < n; ++i) {
            const double prob = 1.0 / (1.0 + std::exp(-f[i]));
            residual[i] = y[i] - prob;
            hessian[i] = std::max(prob * (1.0 - prob), 1e-12);
        }
        GbdtTreeBuilder builder{X, residual, hessian, sorted_by_feature, max_depth, {}};
        builder.build(all, n, 0);
        for (int i = 0; i < n; ++i) f[i] += learning_rate * builder.tree.predict(X[i]);
        model->trees.push_back(std::move(builder.tree));
    }
    return model;
}

nlohmann::json GbdtModel::to_json() const {
    nlohmann::json trees_j = nlohmann::json::array();
    for (const auto& t : trees) trees_j.push_back(tree_to_json(t));
    return {{"kind", "gbdt"}, {"f0", f0}, {"learning_rate", learning_rate}, {"trees", trees_j}};
}

std::unique_ptr<GbdtModel> GbdtModel::from_json(const nlohmann::json& j) {
    auto m = std::make_unique<GbdtModel>();
    m->f0 = j.at("f0");
    m->learning_rate = j.at("learning_rate");
    for (const auto& t : j.at("trees")) m->trees.push_back(tree_from_json(t));
    return m;
}

}  // namespace prism::ml::detail
