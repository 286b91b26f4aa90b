#include "prism/ml/platt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace prism::ml {

namespace {

std::vector<double> smoothed_targets(std::span<const int> labels) {
    double np = 0, nn = 0;
    for (int l : labels) (l == 1 ? np : nn) += 1.0;
    const double tp = (np + 1.0) / (np + 2.0);
    const double tn = 1.0 / (nn + 2.0);
    std::vector<double> t(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) t[i] = (labels[i] == 1) ? tp : tn;
    return t;
}

double nll_at(std::span<const double> scores, const std::vector<double>& targets, double a,
              double b) {
    double fval = 0.0;
    for (size_t i = 0; i < scores.size(); ++i) {
        const double f = a * scores[i] + b;
        const double t = targets[i];
        if (f >= 0)
            fval += t * f + std::log1p(std::exp(-f));
        else
            fval += (t - 1.0) * f + std::log1p(std::exp(f));
    }
    return fval;
}

}  // namespace

double PlattParams::apply(double score) const {
    const double f = a * score + b;
    return (f >= 0) ? std::exp(-f) / (1.0 + std::exp(-f)) : 1.0 / (1.0 + std::exp(f));
}

double platt_nll(std::span<const double> scores, std::span<const int> labels, double a,
                 double b) {
    return nll_at(scores, smoothed_targets(labels), a, b);
}

PlattParams platt_fit(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) throw std::invalid_argument("platt_fit: size mismatch");
    if (scores.empty()) throw std::invalid_argument("platt_fit: empty input");
    bool pos = false, neg = false;
    for (int l : labels) (l == 1 ? pos : neg) = true;
    if (!pos || !neg) throw std::invalid_argument("platt_fit: both classes required");

    double np = 0, nn = 0;
    for (int l : labels) (l == 1 ? np : nn) += 1.0;

    const auto [mn, mx] = std::minmax_element(scores.begin(), scores.end());
    PlattParams params;
    if (!(*mx > *mn)) {
        // constant scores: no slope to fit; match the smoothed base rate
        params.a = 0.0;
        params.b = std::log((nn + 1.0) / (np + 1.0));
        return params;
    }

    // Newton iterations with backtracking (Lin, Lu & Weng style).
    const auto targets = smoothed_targets(labels);
    constexpr int kMaxIter = 200;
    constexpr double kMinStep = 1e-10;
    constexpr double kSigma = 1e-12;
    double a = 0.0;
    double b = std::log((nn + 1.0) / (np + 1.0));
    double fval = nll_at(scores, targets, a, b);

    for (int it = 0; it < kMaxIter; ++it) {
        double h11 = kSigma, h22 = kSigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
        for (size_t i = 0; i < scores.size(); ++i) {
            const double f = a * scores[i] + b;
            double pp, qq;
            if (f >= 0) {
                pp = std::exp(-f) / (1.0 + std::exp(-f));
                qq = 1.0 / (1.0 + std::exp(-f));
            } else {
                pp = 1.0 / (1.0 + std::exp(f));
                qq = std::exp(f) / (1.0 + std::exp(f));
            }
            const double d2 = pp * qq;
            h11 += scores[i] * scores[i] * d2;
            h22 += d2;
            h21 += scores[i] * d2;
            const double d1 = targets[i] - pp;
            g1 += scores[i] * d1;
            g2 += d1;
        }
        if (std::abs(g1) < 1e-5 && std::abs(g2) < 1e-5) break;

        const double det = h11 * h22 - h21 * h21;
        const double da = -(h22 * g1 - h21 * g2) / det;
        const double db = -(-h21 * g1 + h11 * g2) / det;
        const double gd = g1 * da + g2 * db;

        double step = 1.0;
        while (step >= kMinStep) {
            const double na = a + step * da;
            const double nb = b + step * db;
            const double nf = nll_at(scores, targets, na, nb);
            if (nf < fval + 1e-4 * step * gd) {
                a = na;
                b = nb;
                fval = nf;
                break;
            }
            step /= 2.0;
        }
        if (step < kMinStep) break;
    }
    params.a = a;
    params.b = b;
    return params;
}

}  // namespace prism::ml
