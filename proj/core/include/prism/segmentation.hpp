#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "prism/image.hpp"
#include "prism/shape.hpp"

namespace prism::seg {

struct SegmentationConfig {
    double clahe_clip = 2.0;
    int clahe_grid = 8;
    double blur_sigma = 2.0;
    double crop_fraction = 0.75;
    double min_area_fraction = 0.01;   // Otsu sanity band
    double max_area_fraction = 0.65;
    double fallback_min_saturation = 0.15;  // on the [0,1] saturation scale
    int refine_radius = 2;
    double min_component_fraction = 0.005;  // specks below this are dropped
    int kmeans_k = 3;
    uint64_t seed = 42;
};

struct ChromaticScoreMap {
    Plane scores;  // in [0, 382.5] for 8-bit-scaled inputs
};

struct ComponentCandidate {
    BinaryMask mask;
    double area = 0.0;
    double solidity = 0.0;
    double circularity = 0.0;
    double mean_saturation = 0.0;  // [0,255]
    bool touches_border = false;
    double fitness = 0.0;  // 0.55*solidity + 0.35*circularity + 0.10*(S/255)
};

enum class Provenance { otsu, kmeans_fallback };

struct NucleusMask {
    BinaryMask mask;
    double area = 0.0;
    double equivalent_radius = 0.0;  // sqrt(area/pi)
    Provenance provenance = Provenance::otsu;
    double fitness = 0.0;
};

/// S_chroma = (255 - B) + 0.5 * S, pointwise over 8-bit-scaled planes.
ChromaticScoreMap chromatic_score(const Plane& b_scaled, const Plane& s_scaled);

struct OtsuResult {
    BinaryMask mask;       // score >= threshold, applied frame-wide
    double threshold = 0;  // in score units
    bool degenerate = false;
};

/// Threshold estimated on the centered crop_fraction x crop_fraction window
/// (256 uniform bins over the crop's score range), applied to the full map.
OtsuResult otsu_segment(const ChromaticScoreMap& scores, double crop_fraction = 0.75);

/// Exhaustive-search threshold index maximizing between-class variance over a
/// 256-bin histogram. Shared by otsu_segment and usable as an audit hook.
int otsu_threshold_bin(const std::vector<double>& hist256);

/// K-means (k=3) on per-pixel (L,a,b); returns the lowest-mean-L cluster among
/// clusters with mean saturation >= min_saturation, else the lowest-L cluster.
BinaryMask kmeans_fallback(const PlanarImage& lab, const Plane& saturation, int k,
                           uint64_t seed, double min_saturation);

/// Opening, closing (disk radius 2), then hole filling.
BinaryMask refine(const BinaryMask& mask, int radius = 2);

/// Drop border-touching components and specks, then keep the fitness argmax.
/// Ties: larger area, then topmost-leftmost centroid.
NucleusMask select_nucleus(const BinaryMask& mask, const Plane& s_scaled,
                           double min_component_fraction = 0.005);

/// Full pipeline: convert -> CLAHE -> score -> blur -> Otsu (or K-means
/// fallback) -> refine -> select_nucleus.
NucleusMask segment(const PlanarImage& rgb, const SegmentationConfig& config = {});

}  // namespace prism::seg
