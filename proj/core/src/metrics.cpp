#include "prism/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace prism::metrics {

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& o) {
    tp += o.tp;
    tn += o.tn;
    fp += o.fp;
    fn += o.fn;
    return *this;
}

ConfusionMatrix confusion(std::span<const int> labels, std::span<const int> predictions) {
    if (labels.size() != predictions.size())
        throw std::invalid_argument("confusion: length mismatch");
    ConfusionMatrix cm;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 1)
            (predictions[i] == 1 ? cm.tp : cm.fn)++;
        else
            (predictions[i] == 1 ? cm.fp : cm.tn)++;
    }
    return cm;
}

double mcc(const ConfusionMatrix& cm) {
    const double tp = static_cast<double>(cm.tp), tn = static_cast<double>(cm.tn);
    const double fp = static_cast<double>(cm.fp), fn = static_cast<double>(cm.fn);
    const double d = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
    if (d <= 0.0) return 0.0;
    return (tp * tn - fp * fn) / std::sqrt(d);
}

Rates rates(const ConfusionMatrix& cm) {
    Rates r;
    const double n = static_cast<double>(cm.total());
    r.accuracy = (n > 0) ? (cm.tp + cm.tn) / n : 0.0;
    r.sensitivity = (cm.tp + cm.fn > 0) ? static_cast<double>(cm.tp) / (cm.tp + cm.fn) : 0.0;
    r.specificity = (cm.tn + cm.fp > 0) ? static_cast<double>(cm.tn) / (cm.tn + cm.fp) : 0.0;
    r.balanced_accuracy = (r.sensitivity + r.specificity) / 2.0;
    return r;
}

namespace {

void check_two_classes(std::span<const int> labels) {
    bool pos = false, neg = false;
    for (int l : labels) (l == 1 ? pos : neg) = true;
    if (!pos || !neg) throw std::invalid_argument("AUC: both classes must be present");
}

}  // namespace

double auc_roc(std::span<const int> labels, std::span<const double> scores) {
    if (labels.size() != scores.size()) throw std::invalid_argument("auc_roc: length mismatch");
    check_two_classes(labels);

    std::vector<size_t> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return scores[a] < scores[b]; });

    double pos = 0, neg = 0;
    for (int l : labels) (l == 1 ? pos : neg) += 1.0;

    double concordant = 0.0;
    double neg_below = 0.0;
    size_t i = 0;
    while (i < order.size()) {
        size_t j = i;
        double tie_pos = 0, tie_neg = 0;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            (labels[order[j]] == 1 ? tie_pos : tie_neg) += 1.0;
            ++j;
        }
        concordant += tie_pos * (neg_below + 0.5 * tie_neg);
        neg_below += tie_neg;
        i = j;
    }
    return concordant / (pos * neg);
}

double pr_auc(std::span<const int> labels, std::span<const double> scores) {
    if (labels.size() != scores.size()) throw std::invalid_argument("pr_auc: length mismatch");
    check_two_classes(labels);

    std::vector<size_t> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return scores[a] > scores[b]; });

    double total_pos = 0;
    for (int l : labels)
        if (l == 1) total_pos += 1.0;

    double tp = 0, fp = 0, auc = 0.0, prev_recall = 0.0;
    size_t i = 0;
    while (i < order.size()) {
        size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            (labels[order[j]] == 1 ? tp : fp) += 1.0;
            ++j;
        }
        const double recall = tp / total_pos;
        const double precision = tp / (tp + fp);
        auc += (recall - prev_recall) * precision;  // step integration
        prev_recall = recall;
        i = j;
    }
    return auc;
}

MetricSet metric_set(const ConfusionMatrix& cm, std::span<const int> labels,
                     std::span<const double> scores) {
    MetricSet m;
    const Rates r = rates(cm);
    m.accuracy = r.accuracy;
    m.balanced_accuracy = r.balanced_accuracy;
    m.sensitivity = r.sensitivity;
    m.specificity = r.specificity;
    m.mcc = mcc(cm);
    m.auc_roc = auc_roc(labels, scores);
    m.pr_auc = pr_auc(labels, scores);
    return m;
}

}  // namespace prism::metrics
