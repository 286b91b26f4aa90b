#include "prism/ml/kfold.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace prism::ml {

std::vector<int> stratified_kfold(const std::vector<int>& labels, int k, uint64_t seed) {
    if (k < 2) throw std::invalid_argument("stratified_kfold: k must be >= 2");
    std::vector<int> pos, neg;
    for (size_t i = 0; i < labels.size(); ++i)
        (labels[i] == 1 ? pos : neg).push_back(static_cast<int>(i));
    if (static_cast<int>(pos.size()) < k || static_cast<int>(neg.size()) < k)
        throw std::invalid_argument("stratified_kfold: each class needs >= k members");

    std::mt19937_64 rng(seed);
    std::shuffle(pos.begin(), pos.end(), rng);
    std::shuffle(neg.begin(), neg.end(), rng);

    std::vector<int> assign(labels.size(), -1);
    for (size_t i = 0; i < pos.size(); ++i) assign[pos[i]] = static_cast<int>(i % k);
    for (size_t i = 0; i < neg.size(); ++i) assign[neg[i]] = static_cast<int>(i % k);
    return assign;
}

std::vector<int> fold_train_indices(const std::vector<int>& assignment, int fold) {
    std::vector<int> out;
    for (size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] != fold) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> fold_test_indices(const std::vector<int>& assignment, int fold) {
    std::vector<int> out;
    for (size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] == fold) out.push_back(static_cast<int>(i));
    return out;
}

}  // namespace prism::ml
