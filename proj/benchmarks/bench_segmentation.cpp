#include <benchmark/benchmark.h>

#include "prism/imgproc.hpp"
#include "prism/segmentation.hpp"
#include "prism/synth.hpp"
#include "prism/zones.hpp"

using namespace prism;

static void BM_Segment(benchmark::State& state) {
    auto sample = synth::synth_cell(11, 1);
    for (auto _ : state) benchmark::DoNotOptimize(seg::segment(sample.image));
}
BENCHMARK(BM_Segment);

static void BM_ChromaticScore(benchmark::State& state) {
    auto sample = synth::synth_cell(11, 0);
    auto lab = img::convert(sample.image, Colorspace::LAB);
    auto hsv = img::convert(sample.image, Colorspace::HSV);
    Plane b = lab.plane("b");
    for (double& v : b.data) v = std::clamp(v + 128.0, 0.0, 255.0);
    Plane s = hsv.plane("S");
    for (double& v : s.data) v *= 255.0;
    for (auto _ : state) benchmark::DoNotOptimize(seg::chromatic_score(b, s));
}
BENCHMARK(BM_ChromaticScore);

static void BM_ZonalDecompose(benchmark::State& state) {
    auto sample = synth::synth_cell(11, 1);
    auto nucleus = seg::segment(sample.image);
    auto cell = zones::approximate_cell_boundary(sample.image, nucleus,
                                                 zones::adaptive_radius(nucleus.area, 24));
    for (auto _ : state) benchmark::DoNotOptimize(zones::decompose(nucleus, cell, 10, 24));
}
BENCHMARK(BM_ZonalDecompose);
