#include "prism/ml/stacking.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "prism/ml/kfold.hpp"
#include "prism/rng.hpp"

namespace prism::ml {

namespace {

nlohmann::json spec_to_json(const BaseLearnerSpec& s) {
    return {{"kind", to_string(s.kind)},
            {"needs_standardization", s.needs_standardization},
            {"forest_trees", s.hp.forest_trees},
            {"svm_c", s.hp.svm_c},
            {"svm_tol", s.hp.svm_tol},
            {"logreg_lambda", s.hp.logreg_lambda},
            {"logreg_grad_tol", s.hp.logreg_grad_tol},
            {"logreg_max_iters", s.hp.logreg_max_iters},
            {"knn_k", s.hp.knn_k},
            {"gbdt_trees", s.hp.gbdt_trees},
            {"gbdt_depth", s.hp.gbdt_depth},
            {"gbdt_learning_rate", s.hp.gbdt_learning_rate}};
}

BaseLearnerSpec spec_from_json(const nlohmann::json& j) {
    Hyperparameters hp;
    hp.forest_trees = j.at("forest_trees");
    hp.svm_c = j.at("svm_c");
    hp.svm_tol = j.at("svm_tol");
    hp.logreg_lambda = j.at("logreg_lambda");
    hp.logreg_grad_tol = j.at("logreg_grad_tol");
    hp.logreg_max_iters = j.at("logreg_max_iters");
    hp.knn_k = j.at("knn_k");
    hp.gbdt_trees = j.at("gbdt_trees");
    hp.gbdt_depth = j.at("gbdt_depth");
    hp.gbdt_learning_rate = j.at("gbdt_learning_rate");
    BaseLearnerSpec s = BaseLearnerSpec::make(base_kind_from_string(j.at("kind").get<std::string>()), hp);
    s.needs_standardization = j.at("needs_standardization");
    return s;
}

nlohmann::json metricset_to_json(const metrics::MetricSet& m) {
    return {{"accuracy", m.accuracy},
            {"balanced_accuracy", m.balanced_accuracy},
            {"sensitivity", m.sensitivity},
            {"specificity", m.specificity},
            {"mcc", m.mcc},
            {"auc_roc", m.auc_roc},
            {"pr_auc", m.pr_auc}};
}

nlohmann::json cm_to_json(const metrics::ConfusionMatrix& cm) {
    return {{"tp", cm.tp}, {"tn", cm.tn}, {"fp", cm.fp}, {"fn", cm.fn}};
}

// Run tasks 0..n-1 on up to `jobs` worker threads; results are written by
// index so scheduling never affects output.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    std::exception_ptr error;
    std::mutex error_mu;
    for (int t = 0; t < std::min(jobs, n); ++t) {
        workers.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

double CalibratedModel::raw_score(const std::vector<double>& row) const {
    if (scaler && row.size() != scaler->mean.size())
        throw std::invalid_argument("CalibratedModel: row width mismatch");
    return scaler ? model->score(scaler->apply(row)) : model->score(row);
}

double CalibratedModel::predict_proba(const std::vector<double>& row) const {
    return platt.apply(raw_score(row));
}

std::vector<double> CalibratedModel::predict_proba(const Matrix& rows) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(predict_proba(r));
    return out;
}

CalibratedModel calibrate_train(const BaseLearnerSpec& spec, const Matrix& X,
                                const std::vector<int>& y, int k, uint64_t seed) {
    CalibratedModel cm;
    cm.spec = spec;
    Matrix Xs;
    const Matrix* data = &X;
    if (spec.needs_standardization) {
        cm.scaler = fit_scaler(X);
        Xs = cm.scaler->apply(X);
        data = &Xs;
    }

    // CV scores for the sigmoid, then the final fit on everything.
    const auto folds = stratified_kfold(y, k, sub_seed(seed, "calib-folds"));
    std::vector<double> cv_scores(y.size(), 0.0);
    for (int f = 0; f < k; ++f) {
        const auto tr = fold_train_indices(folds, f);
        const auto te = fold_test_indices(folds, f);
        Matrix Xtr;
        std::vector<int> ytr;
        Xtr.reserve(tr.size());
        for (int i : tr) {
            Xtr.push_back((*data)[i]);
            ytr.push_back(y[i]);
        }
        const auto model =
            train_base(spec, Xtr, ytr, sub_seed(seed, "calib/" + std::to_string(f)));
        for (int i : te) cv_scores[i] = model->score((*data)[i]);
    }
    cm.platt = platt_fit(cv_scores, y);
    cm.model = train_base(spec, *data, y, sub_seed(seed, "final"));
    return cm;
}

nlohmann::json CalibratedModel::to_json() const {
    nlohmann::json j = {{"spec", spec_to_json(spec)},
                        {"platt_a", platt.a},
                        {"platt_b", platt.b},
                        {"model", model->to_json()}};
    if (scaler) j["scaler"] = {{"mean", scaler->mean}, {"stdev", scaler->stdev}};
    return j;
}

CalibratedModel CalibratedModel::from_json(const nlohmann::json& j) {
    CalibratedModel cm;
    cm.spec = spec_from_json(j.at("spec"));
    cm.platt.a = j.at("platt_a");
    cm.platt.b = j.at("platt_b");
    cm.model = model_from_json(j.at("model"));
    if (j.contains("scaler")) {
        Scaler s;
        s.mean = j["scaler"].at("mean").get<std::vector<double>>();
        s.stdev = j["scaler"].at("stdev").get<std::vector<double>>();
        cm.scaler = std::move(s);
    }
    return cm;
}

namespace {

// Per-base out-of-fold probabilities on the training table. The sub-seed
// labels depend only on (seed, base kind, fold), never on which other bases
// participate.
struct BaseOofResult {
    std::vector<double> oof;  // one calibrated probability per training row
    CalibratedModel refit;    // trained on the whole table
};

BaseOofResult base_oof(const BaseLearnerSpec& spec, const FeatureTable& table,
                       const std::vector<int>& folds, int k, uint64_t seed) {
    const std::string name = to_string(spec.kind);
    BaseOofResult r;
    r.oof.assign(table.n(), 0.0);
    for (int f = 0; f < k; ++f) {
        const auto tr = fold_train_indices(folds, f);
        const auto te = fold_test_indices(folds, f);
        const FeatureTable train = table.subset(tr);
        const CalibratedModel cm =
            calibrate_train(spec, train.rows, train.labels, k,
                            sub_seed(seed, "base/" + name + "/fold" + std::to_string(f)));
        for (int i : te) r.oof[i] = cm.predict_proba(table.rows[i]);
    }
    r.refit = calibrate_train(spec, table.rows, table.labels, k,
                              sub_seed(seed, "base/" + name + "/full"));
    return r;
}

}  // namespace

StackedModel stack_fit(const std::vector<BaseLearnerSpec>& specs, const FeatureTable& table,
                       int k, uint64_t seed) {
    if (specs.empty()) throw std::invalid_argument("stack_fit: need at least one base spec");
    table.validate();

    StackedModel sm;
    sm.seed = seed;
    sm.schema_id = table.schema_id;
    sm.oof_fold = stratified_kfold(table.labels, k, sub_seed(seed, "oof"));

    const size_t n = table.n(), m = specs.size();
    sm.oof_matrix.assign(n, std::vector<double>(m, 0.0));
    for (size_t b = 0; b < m; ++b) {
        BaseOofResult r = base_oof(specs[b], table, sm.oof_fold, k, seed);
        for (size_t i = 0; i < n; ++i) sm.oof_matrix[i][b] = r.oof[i];
        sm.bases.push_back(std::move(r.refit));
    }
    sm.meta = calibrate_train(BaseLearnerSpec::make(BaseKind::SVM_RBF), sm.oof_matrix,
                              table.labels, k, sub_seed(seed, "meta"));
    return sm;
}

StackPrediction stack_predict(const StackedModel& model, const Matrix& rows) {
    StackPrediction out;
    out.prob.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<double> meta_row;
        meta_row.reserve(model.bases.size());
        for (const auto& base : model.bases) meta_row.push_back(base.predict_proba(row));
        out.prob.push_back(model.meta.predict_proba(meta_row));
    }
    out.label.reserve(out.prob.size());
    for (double p : out.prob) out.label.push_back(p >= 0.5 ? 1 : 0);
    return out;
}

nlohmann::json StackedModel::to_json() const {
    nlohmann::json bases_j = nlohmann::json::array();
    for (const auto& b : bases) bases_j.push_back(b.to_json());
    return {{"format", "prism-model-v1"},
            {"seed", seed},
            {"schema_id", schema_id},
            {"oof_fold", oof_fold},
            {"bases", bases_j},
            {"meta", meta.to_json()}};
}

StackedModel StackedModel::from_json(const nlohmann::json& j) {
    if (j.at("format") != "prism-model-v1")
        throw std::invalid_argument("unsupported model bundle format");
    StackedModel sm;
    sm.seed = j.at("seed");
    sm.schema_id = j.at("schema_id");
    sm.oof_fold = j.at("oof_fold").get<std::vector<int>>();
    for (const auto& b : j.at("bases")) sm.bases.push_back(CalibratedModel::from_json(b));
    sm.meta = CalibratedModel::from_json(j.at("meta"));
    return sm;
}

std::vector<EvaluationReport> evaluate_cv_multi(const std::vector<BaseLearnerSpec>& pool,
                                                const std::vector<std::vector<int>>& subsets,
                                                const FeatureTable& table, int k, uint64_t seed,
                                                int jobs) {
    table.validate();
    const auto outer = stratified_kfold(table.labels, k, sub_seed(seed, "outer-folds"));
    const size_t nb = pool.size();

    struct FoldCache {
        std::vector<int> train_idx, test_idx, inner;
        FeatureTable train;
        std::vector<std::vector<double>> oof;        // [base][train row]
        std::vector<std::vector<double>> test_prob;  // [base][test row]
        uint64_t sseed = 0;
    };
    std::vector<FoldCache> caches(k);
    for (int f = 0; f < k; ++f) {
        auto& c = caches[f];
        c.train_idx = fold_train_indices(outer, f);
        c.test_idx = fold_test_indices(outer, f);
        c.train = table.subset(c.train_idx);
        c.sseed = sub_seed(seed, "outer/" + std::to_string(f));
        c.inner = stratified_kfold(c.train.labels, k, sub_seed(c.sseed, "oof"));
        c.oof.resize(nb);
        c.test_prob.resize(nb);
    }

    // fold x base tasks are independent
    parallel_for(k * static_cast<int>(nb), jobs, [&](int task) {
        const int f = task / static_cast<int>(nb);
        const int b = task % static_cast<int>(nb);
        auto& c = caches[f];
        BaseOofResult r = base_oof(pool[b], c.train, c.inner, k, c.sseed);
        c.oof[b] = std::move(r.oof);
        c.test_prob[b].reserve(c.test_idx.size());
        for (int i : c.test_idx) c.test_prob[b].push_back(r.refit.predict_proba(table.rows[i]));
    });

    std::vector<EvaluationReport> reports(subsets.size());
    parallel_for(static_cast<int>(subsets.size()), jobs, [&](int s) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto& subset = subsets[s];
        EvaluationReport rep;
        rep.k = k;
        rep.seed = seed;
        rep.outer_assignment = outer;
        for (int b : subset) rep.config.push_back(to_string(pool[b].kind));

        std::vector<double> pooled_prob(table.n(), 0.0);
        std::vector<int> pooled_pred(table.n(), 0);
        metrics::MetricSet mean{};
        for (int f = 0; f < k; ++f) {
            const auto& c = caches[f];
            Matrix meta_train(c.train.n(), std::vector<double>(subset.size()));
            for (size_t i = 0; i < c.train.n(); ++i)
                for (size_t j = 0; j < subset.size(); ++j)
                    meta_train[i][j] = c.oof[subset[j]][i];
            const CalibratedModel meta =
                calibrate_train(BaseLearnerSpec::make(BaseKind::SVM_RBF), meta_train,
                                c.train.labels, k, sub_seed(c.sseed, "meta"));

            FoldResult fr;
            fr.fold = f;
            fr.train_indices = c.train_idx;
            fr.test_indices = c.test_idx;
            std::vector<int> test_labels, test_pred;
            for (size_t t = 0; t < c.test_idx.size(); ++t) {
                std::vector<double> meta_row(subset.size());
                for (size_t j = 0; j < subset.size(); ++j)
                    meta_row[j] = c.test_prob[subset[j]][t];
                const double p = meta.predict_proba(meta_row);
                fr.prob.push_back(p);
                const int idx = c.test_idx[t];
                pooled_prob[idx] = p;
                pooled_pred[idx] = p >= 0.5 ? 1 : 0;
                test_labels.push_back(table.labels[idx]);
                test_pred.push_back(p >= 0.5 ? 1 : 0);
            }
            fr.cm = metrics::confusion(test_labels, test_pred);
            fr.metrics = metrics::metric_set(fr.cm, test_labels, fr.prob);
            rep.pooled_cm += fr.cm;
            mean.accuracy += fr.metrics.accuracy;
            mean.balanced_accuracy += fr.metrics.balanced_accuracy;
            mean.sensitivity += fr.metrics.sensitivity;
            mean.specificity += fr.metrics.specificity;
            mean.mcc += fr.metrics.mcc;
            mean.auc_roc += fr.metrics.auc_roc;
            mean.pr_auc += fr.metrics.pr_auc;
            rep.folds.push_back(std::move(fr));
        }
        rep.pooled = metrics::metric_set(rep.pooled_cm, table.labels, pooled_prob);
        const double kk = static_cast<double>(k);
        rep.fold_mean = {mean.accuracy / kk,    mean.balanced_accuracy / kk,
                         mean.sensitivity / kk, mean.specificity / kk,
                         mean.mcc / kk,         mean.auc_roc / kk,
                         mean.pr_auc / kk};
        rep.leakage_audit_passed = audit_no_leakage(rep);
        rep.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        reports[s] = std::move(rep);
    });
    return reports;
}

EvaluationReport evaluate_cv(const std::vector<BaseLearnerSpec>& specs,
                             const FeatureTable& table, int k, uint64_t seed, int jobs) {
    std::vector<int> all(specs.size());
    for (size_t i = 0; i < specs.size(); ++i) all[i] = static_cast<int>(i);
    return evaluate_cv_multi(specs, {all}, table, k, seed, jobs).front();
}

bool audit_no_leakage(const EvaluationReport& report) {
    const size_t n = report.outer_assignment.size();
    std::vector<int> seen(n, 0);
    for (const auto& fr : report.folds) {
        std::vector<char> in_train(n, 0), in_test(n, 0);
        for (int i : fr.train_indices) {
            if (i < 0 || static_cast<size_t>(i) >= n) return false;
            in_train[i] = 1;
        }
        for (int i : fr.test_indices) {
            if (i < 0 || static_cast<size_t>(i) >= n) return false;
            in_test[i] = 1;
            seen[i]++;
            if (report.outer_assignment[i] != fr.fold) return false;
        }
        // every outer prediction comes from a model that never saw the sample
        for (size_t i = 0; i < n; ++i) {
            if (in_train[i] && in_test[i]) return false;
            if (!in_train[i] && !in_test[i]) return false;  // must partition
        }
    }
    for (size_t i = 0; i < n; ++i)
        if (seen[i] != 1) return false;
    return true;
}

// wall_seconds is intentionally not serialized: identical (config, seed) runs
// must produce byte-identical reports.
nlohmann::json EvaluationReport::to_json() const {
    nlohmann::json folds_j = nlohmann::json::array();
    for (const auto& f : folds)
        folds_j.push_back({{"fold", f.fold},
                           {"test_indices", f.test_indices},
                           {"confusion", cm_to_json(f.cm)},
                           {"metrics", metricset_to_json(f.metrics)}});
    return {{"format", "prism-report-v1"},
            {"config", config},
            {"k", k},
            {"seed", seed},
            {"outer_assignment", outer_assignment},
            {"folds", folds_j},
            {"pooled_confusion", cm_to_json(pooled_cm)},
            {"pooled", metricset_to_json(pooled)},
            {"fold_mean", metricset_to_json(fold_mean)},
            {"leakage_audit_passed", leakage_audit_passed}};
}

}  // namespace prism::ml
