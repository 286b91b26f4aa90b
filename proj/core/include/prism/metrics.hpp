#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace prism::metrics {

/// Positive class = lymphoblast (label 1).
struct ConfusionMatrix {
    int64_t tp = 0;
    int64_t tn = 0;
    int64_t fp = 0;
    int64_t fn = 0;

    int64_t total() const { return tp + tn + fp + fn; }
    ConfusionMatrix& operator+=(const ConfusionMatrix& o);
};

struct MetricSet {
    double accuracy = 0.0;
    double balanced_accuracy = 0.0;
    double sensitivity = 0.0;
    double specificity = 0.0;
    double mcc = 0.0;
    double auc_roc = 0.0;
    double pr_auc = 0.0;
};

ConfusionMatrix confusion(std::span<const int> labels, std::span<const int> predictions);

/// Zero-denominator factors yield 0 by convention.
double mcc(const ConfusionMatrix& cm);

struct Rates {
    double accuracy = 0.0;
    double balanced_accuracy = 0.0;
    double sensitivity = 0.0;
    double specificity = 0.0;
};

Rates rates(const ConfusionMatrix& cm);

/// Mann-Whitney pair statistic with half credit for ties.
double auc_roc(std::span<const int> labels, std::span<const double> scores);

/// Step-wise precision-recall integration over descending-score thresholds.
double pr_auc(std::span<const int> labels, std::span<const double> scores);

MetricSet metric_set(const ConfusionMatrix& cm, std::span<const int> labels,
                     std::span<const double> scores);

}  // namespace prism::metrics
