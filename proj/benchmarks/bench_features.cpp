#include <benchmark/benchmark.h>

#include <random>

#include "prism/features.hpp"
#include "prism/synth.hpp"
#include "prism/zones.hpp"

using namespace prism;

static void BM_GlcmFeatures(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Plane gray("gray", n, n);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 255);
    for (double& v : gray.data) v = u(rng);
    BinaryMask dom(n, n, true);
    for (auto _ : state) benchmark::DoNotOptimize(feat::glcm_features(gray, dom));
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_GlcmFeatures)->Arg(64)->Arg(128)->Arg(256);

static void BM_LbpHistogram(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Plane gray("gray", n, n);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0, 255);
    for (double& v : gray.data) v = u(rng);
    BinaryMask dom(n, n, true);
    for (auto _ : state) benchmark::DoNotOptimize(feat::lbp_histogram(gray, dom));
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_LbpHistogram)->Arg(128)->Arg(256);

static void BM_BuildVector(benchmark::State& state) {
    auto sample = synth::synth_cell(7, 1);
    auto nucleus = seg::segment(sample.image);
    auto cell = zones::approximate_cell_boundary(sample.image, nucleus,
                                                 zones::adaptive_radius(nucleus.area, 24));
    auto z = zones::decompose(nucleus, cell, 10, 24);
    for (auto _ : state)
        benchmark::DoNotOptimize(feat::build_vector(sample.image, z));
}
BENCHMARK(BM_BuildVector);
