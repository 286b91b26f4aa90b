#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prism/image.hpp"

namespace prism::synth {

/// One generated blood-smear-like cell image with its ground-truth nucleus.
struct SynthSample {
    PlanarImage image;  // RGB8
    BinaryMask nucleus;
    int label = 0;  // 1 = blast-like (high N:C, strong perinuclear gradient, coarse chromatin)
    std::string id;
};

/// A single cell on a pale background. Class 1 has a larger nucleus relative
/// to the cell, a deeper perinuclear chroma gradient, and coarser chromatin
/// blotches than class 0. Deterministic in (seed, label, size).
SynthSample synth_cell(uint64_t seed, int label, int size = kWorkingSize);

/// Balanced corpus: ceil(n/2) of class 1, rest class 0, ids "synth_<i>_<label>".
std::vector<SynthSample> synth_corpus(int n, uint64_t seed, int size = kWorkingSize);

}  // namespace prism::synth
