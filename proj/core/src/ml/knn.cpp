#include <algorithm>
#include <cmath>
#include <numeric>

#include "models_impl.hpp"

namespace prism::ml::detail {

double KnnModel::score(std::span<const double> row) const {
    const int n = static_cast<int>(train_rows.size());
    std::vector<std::pair<double, int>> dist;
    dist.reserve(n);
    for (int i = 0; i < n; ++i) {
        double d2 = 0.0;
        const auto& r = train_rows[i];
        for (size_t j = 0; j < r.size(); ++j) {
            const double d = r[j] - row[j];
            d2 += d * d;
        }
        dist.emplace_back(d2, i);  // distance ties broken by index order
    }
    const int kk = std::min(k, n);
    std::partial_sort(dist.begin(), dist.begin() + kk, dist.end());
    double pos = 0.0;
    for (int i = 0; i < kk; ++i) pos += train_labels[dist[i].second];
    return pos / kk;
}

std::unique_ptr<KnnModel> train_knn(const Matrix& X, const std::vector<int>& y, int k) {
    auto m = std::make_unique<KnnModel>();
    m->train_rows = X;
    m->train_labels = y;
    m->k = k;
    return m;
}

nlohmann::json KnnModel::to_json() const {
    return {{"kind", "knn"}, {"k", k}, {"rows", train_rows}, {"labels", train_labels}};
}

std::unique_ptr<KnnModel> KnnModel::from_json(const nlohmann::json& j) {
    auto m = std::make_unique<KnnModel>();
    m->k = j.at("k");
    m->train_rows = j.at("rows").get<Matrix>();
    m->train_labels = j.at("labels").get<std::vector<int>>();
    return m;
}

}  // namespace prism::ml::detail
