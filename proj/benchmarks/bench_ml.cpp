#include <benchmark/benchmark.h>

#include <random>

#include "prism/ml/models.hpp"
#include "prism/ml/scaler.hpp"
#include "prism/ml/stacking.hpp"

using namespace prism;

namespace {

ml::FeatureTable blobs(int n, uint64_t seed) {
    ml::FeatureTable t;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0, 1);
    for (int i = 0; i < n; ++i) {
        const int label = i % 2;
        t.rows.push_back({g(rng) + (label ? 1.5 : -1.5), g(rng) + (label ? 1.5 : -1.5),
                          g(rng), g(rng)});
        t.labels.push_back(label);
        t.ids.push_back("r" + std::to_string(i));
    }
    t.schema_id = "bench";
    return t;
}

}  // namespace

static void BM_TrainSvm(benchmark::State& state) {
    auto t = blobs(static_cast<int>(state.range(0)), 5);
    auto X = ml::fit_scaler(t.rows).apply(t.rows);
    auto spec = ml::BaseLearnerSpec::make(ml::BaseKind::SVM_RBF);
    for (auto _ : state) benchmark::DoNotOptimize(ml::train_base(spec, X, t.labels, 42));
}
BENCHMARK(BM_TrainSvm)->Arg(100)->Arg(260);

static void BM_TrainExtraTrees(benchmark::State& state) {
    auto t = blobs(static_cast<int>(state.range(0)), 6);
    auto spec = ml::BaseLearnerSpec::make(ml::BaseKind::ET);
    for (auto _ : state) benchmark::DoNotOptimize(ml::train_base(spec, t.rows, t.labels, 42));
}
BENCHMARK(BM_TrainExtraTrees)->Arg(260);

static void BM_EvaluateCvStack(benchmark::State& state) {
    auto t = blobs(260, 7);
    std::vector<ml::BaseLearnerSpec> specs = {
        ml::BaseLearnerSpec::make(ml::BaseKind::ET),
        ml::BaseLearnerSpec::make(ml::BaseKind::SVM_RBF),
        ml::BaseLearnerSpec::make(ml::BaseKind::LOGREG)};
    for (auto _ : state) benchmark::DoNotOptimize(ml::evaluate_cv(specs, t, 5, 42));
}
BENCHMARK(BM_EvaluateCvStack);

BENCHMARK_MAIN();
