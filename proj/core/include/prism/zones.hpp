#pragma once

#include <utility>

#include "prism/image.hpp"
#include "prism/segmentation.hpp"

namespace prism::zones {

/// The four spatial domains anchored on the nucleus, plus the radii that
/// produced them.
struct ZonalDecomposition {
    BinaryMask nucleus;   // M_n
    BinaryMask proximal;  // Z1
    BinaryMask distal;    // Z2
    BinaryMask cell;      // C
    std::pair<int, int> radii;         // (delta1*, delta2*)
    std::pair<int, int> base_offsets;  // (d1, d2), defaults (10, 24)
    bool empty_proximal = false;
    bool empty_distal = false;
};

/// delta* = min(d, max(6, floor(1.6 * R_eq))), R_eq = sqrt(area/pi).
int adaptive_radius(double area, int base_offset);

/// Dilation by a disk of the given radius (radius 0 is the identity).
BinaryMask dilate(const BinaryMask& mask, int radius);

/// Gross cell boundary: Otsu on the HSV saturation plane, keep the component
/// containing the nucleus centroid, refine, union with the delta2* dilation of
/// the nucleus. Falls back to the dilation alone when thresholding degenerates.
BinaryMask approximate_cell_boundary(const PlanarImage& rgb, const seg::NucleusMask& nucleus,
                                     int delta2);

/// Z1 = (D_d1(Mn) \ Mn) ∩ C;  Z2 = (D_d2(Mn) \ D_d1(Mn)) ∩ C.
ZonalDecomposition decompose(const seg::NucleusMask& nucleus, const BinaryMask& cell,
                             int d1 = 10, int d2 = 24);

/// Tint nucleus / Z1 / Z2 with a fixed palette at fixed alpha.
PlanarImage render_overlay(const PlanarImage& rgb, const ZonalDecomposition& zones);

// Overlay blend constants (documented so tests can assert exact values).
inline constexpr double kOverlayAlpha = 0.45;
inline constexpr double kPaletteNucleus[3] = {70, 70, 230};
inline constexpr double kPaletteProximal[3] = {60, 200, 60};
inline constexpr double kPaletteDistal[3] = {235, 180, 40};

}  // namespace prism::zones
