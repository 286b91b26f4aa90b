#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "prism/metrics.hpp"
#include "prism/ml/platt.hpp"

using namespace prism::metrics;

namespace {

// exhaustive Mann-Whitney pair counting
double auc_oracle(const std::vector<int>& y, const std::vector<double>& s) {
    double num = 0, den = 0;
    for (size_t i = 0; i < y.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j) {
            if (y[i] != 1 || y[j] != 0) continue;
            den += 1;
            if (s[i] > s[j]) num += 1;
            else if (s[i] == s[j]) num += 0.5;
        }
    return num / den;
}

}  // namespace

TEST_CASE("confusion matrix worked examples") {
    std::vector<int> labels(20, 0);
    std::fill(labels.begin(), labels.begin() + 10, 1);
    auto perfect = confusion(labels, labels);
    CHECK(perfect.tp == 10);
    CHECK(perfect.tn == 10);
    CHECK(perfect.fp == 0);
    CHECK(perfect.fn == 0);

    std::vector<int> all_pos(20, 1);
    auto cm = confusion(labels, all_pos);
    CHECK(cm.tp == 10);
    CHECK(cm.fp == 10);
    CHECK(cm.tn == 0);
    CHECK(cm.fn == 0);
    CHECK(cm.total() == 20);
    CHECK(rates(cm).balanced_accuracy == doctest::Approx(0.5));
}

TEST_CASE("MCC worked values and conventions") {
    CHECK(mcc({45, 45, 5, 5}) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(mcc({10, 10, 0, 0}) == doctest::Approx(1.0));
    CHECK(mcc({10, 0, 10, 0}) == 0.0);  // zero-denominator convention
}

TEST_CASE("MCC is symmetric under simultaneous class/prediction swap") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> u(0, 50);
    for (int t = 0; t < 50; ++t) {
        ConfusionMatrix cm{u(rng), u(rng), u(rng), u(rng)};
        ConfusionMatrix sw{cm.tn, cm.tp, cm.fn, cm.fp};
        CHECK(mcc(cm) == doctest::Approx(mcc(sw)).epsilon(1e-12));
    }
}

TEST_CASE("rates worked example at the 260-sample scale") {
    auto r = rates({128, 128, 2, 2});
    CHECK(r.accuracy == doctest::Approx(256.0 / 260.0).epsilon(1e-12));
}

TEST_CASE("ROC-AUC worked example and tie convention") {
    std::vector<int> y = {1, 0, 1, 0};
    std::vector<double> s = {0.9, 0.8, 0.7, 0.1};
    CHECK(auc_roc(y, s) == doctest::Approx(0.75).epsilon(1e-12));

    std::vector<double> ties(4, 0.5);
    CHECK(auc_roc(y, ties) == doctest::Approx(0.5).epsilon(1e-12));

    std::vector<int> yp = {0, 0, 1, 1};
    std::vector<double> sp = {0.1, 0.2, 0.8, 0.9};
    CHECK(auc_roc(yp, sp) == doctest::Approx(1.0));
    CHECK(pr_auc(yp, sp) == doctest::Approx(1.0));
}

TEST_CASE("ROC-AUC equals exhaustive pair counting on random fixtures") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> lab(0, 1);
    std::uniform_int_distribution<int> nsz(4, 200);
    std::uniform_real_distribution<double> sc(0, 1);
    std::uniform_int_distribution<int> coarse(0, 9);
    for (int t = 0; t < 100; ++t) {
        const int n = nsz(rng);
        std::vector<int> y(n);
        std::vector<double> s(n);
        bool pos = false, neg = false;
        for (int i = 0; i < n; ++i) {
            y[i] = lab(rng);
            (y[i] ? pos : neg) = true;
            s[i] = (t % 2 == 0) ? sc(rng) : coarse(rng) / 9.0;  // odd trials force ties
        }
        if (!pos || !neg) {
            y[0] = 0;
            y[1] = 1;
        }
        CHECK(auc_roc(y, s) == doctest::Approx(auc_oracle(y, s)).epsilon(1e-12));
    }
}

TEST_CASE("ROC-AUC is invariant under strictly monotone score transforms") {
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<int> lab(0, 1);
    std::uniform_real_distribution<double> sc(-3, 3);
    for (int t = 0; t < 30; ++t) {
        std::vector<int> y(60);
        std::vector<double> s(60), s2(60);
        for (int i = 0; i < 60; ++i) {
            y[i] = lab(rng);
            s[i] = sc(rng);
            s2[i] = std::exp(2.0 * s[i]) + 7.0;
        }
        y[0] = 0;
        y[1] = 1;
        CHECK(auc_roc(y, s) == doctest::Approx(auc_roc(y, s2)).epsilon(1e-12));
    }
}

TEST_CASE("Platt calibration leaves ROC-AUC unchanged") {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> g(0, 1);
    std::vector<int> y(100);
    std::vector<double> s(100);
    for (int i = 0; i < 100; ++i) {
        y[i] = i % 2;
        s[i] = g(rng) + (y[i] ? 1.0 : -1.0);
    }
    const auto params = prism::ml::platt_fit(s, y);
    std::vector<double> p(100);
    for (int i = 0; i < 100; ++i) p[i] = params.apply(s[i]);
    CHECK(auc_roc(y, p) == doctest::Approx(auc_roc(y, s)).epsilon(1e-12));
}

TEST_CASE("PR-AUC step integration on a small hand-checked fixture") {
    // descending scores: 0.9(+), 0.8(-), 0.7(+), 0.1(-)
    // recall steps at the positives: precision 1/1 then 2/3
    std::vector<int> y = {1, 0, 1, 0};
    std::vector<double> s = {0.9, 0.8, 0.7, 0.1};
    CHECK(pr_auc(y, s) == doctest::Approx(0.5 * 1.0 + 0.5 * (2.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("metric_set is internally consistent") {
    std::vector<int> y = {1, 1, 1, 0, 0, 0};
    std::vector<int> pred = {1, 1, 0, 0, 0, 1};
    std::vector<double> s = {0.9, 0.8, 0.4, 0.3, 0.2, 0.6};
    auto cm = confusion(y, pred);
    auto m = metric_set(cm, y, s);
    CHECK(m.accuracy == doctest::Approx(4.0 / 6.0));
    CHECK(m.sensitivity == doctest::Approx(2.0 / 3.0));
    CHECK(m.specificity == doctest::Approx(2.0 / 3.0));
    CHECK(m.balanced_accuracy == doctest::Approx(2.0 / 3.0));
    CHECK(m.mcc == doctest::Approx(mcc(cm)));
    CHECK(m.auc_roc == doctest::Approx(auc_oracle(y, s)));
}
