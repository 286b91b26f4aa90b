#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "prism/image.hpp"
#include "prism/zones.hpp"

namespace prism::feat {

enum class Domain { nucleus, proximal, distal, cell, grad_z1, grad_z2 };
enum class Family { morph, color, glcm, lbp, ratio };

std::string to_string(Domain d);
std::string to_string(Family f);

struct FeatureDef {
    std::string name;
    Domain domain;
    Family family;
};

/// Fixed, ordered feature schema; serialized beside every feature table.
struct FeatureSchema {
    std::vector<FeatureDef> defs;
    std::string schema_id;  // content hash of the ordered names + version tag

    size_t size() const { return defs.size(); }
};

const FeatureSchema& default_schema();

struct FeatureVector {
    std::vector<double> values;
    std::string schema_id;
    std::set<Domain> degraded_domains;  // zones that were empty (values zeroed)
};

struct MorphologyFeatures {
    double area = 0.0;
    double circularity = 0.0;
    double solidity = 0.0;
    double boundary_roughness = 1.0;
    double nc_ratio = 0.0;  // Area(Mn)/Area(C)
};

MorphologyFeatures morphology_features(const BinaryMask& nucleus, const BinaryMask& cell);

struct ColorStats {
    // mu then sigma for R, G, B, gray (population sigma)
    std::array<double, 4> mean{};
    std::array<double, 4> stdev{};
    bool degraded = false;  // empty domain: all zeros
};

ColorStats color_stats(const PlanarImage& rgb, const Plane& gray, const BinaryMask& domain);

/// Nucleus-minus-zone deltas, per channel: 4 mean deltas then 4 sigma deltas.
std::array<double, 8> spatial_gradients(const ColorStats& nucleus_stats,
                                        const ColorStats& zone_stats);

struct GlcmFeatures {
    double contrast = 0.0;
    double homogeneity = 0.0;
    double energy = 0.0;  // angular second moment
    double correlation = 0.0;
    bool degraded = false;  // no co-occurring pair in any matrix
};

/// 32-level quantization over the domain's min-max; symmetric normalized
/// matrices for (distance, angle) in {1,3} x {0,45,90,135} degrees, pairs
/// counted only when both pixels lie in the domain; descriptors averaged
/// over matrices that have at least one pair.
GlcmFeatures glcm_features(const Plane& gray, const BinaryMask& domain);

struct LbpHistogram {
    std::array<double, 32> bins{};  // normalized to sum 1 when any pixel counted
    double raw_count = 0.0;         // valid domain pixels before normalization
    bool degraded = false;
};

/// 8-neighborhood LBP, radius 1, neighbor >= center -> bit 1, bit 0 at the
/// east neighbor proceeding counter-clockwise; codes computed only where the
/// full neighborhood is in frame and the center is in the domain. The 256-bin
/// histogram is folded into 32 groups of 8 consecutive codes.
LbpHistogram lbp_histogram(const Plane& gray, const BinaryMask& domain);

FeatureVector build_vector(const PlanarImage& rgb, const zones::ZonalDecomposition& zones,
                           const FeatureSchema& schema = default_schema());

}  // namespace prism::feat
