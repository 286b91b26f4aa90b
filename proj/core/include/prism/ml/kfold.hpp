#pragma once

#include <cstdint>
#include <vector>

namespace prism::ml {

/// Deterministic stratified k-fold: per-class shuffle, then round-robin deal.
/// Per-fold class counts differ by at most 1 from perfect proportion.
/// Returns the fold index (0..k-1) of every sample.
std::vector<int> stratified_kfold(const std::vector<int>& labels, int k, uint64_t seed);

std::vector<int> fold_train_indices(const std::vector<int>& assignment, int fold);
std::vector<int> fold_test_indices(const std::vector<int>& assignment, int fold);

}  // namespace prism::ml
