#include "prism/zones.hpp"

#include <algorithm>
#include <cmath>

#include "prism/imgproc.hpp"
#include "prism/shape.hpp"

namespace prism::zones {

int adaptive_radius(double area, int base_offset) {
    if (area <= 0.0) throw InputError("adaptive_radius: area must be > 0");
    if (base_offset <= 0) throw InputError("adaptive_radius: base offset must be > 0");
    const double r_eq = std::sqrt(area / M_PI);
    // Nudge before flooring so exact products (e.g. 1.6 * 10) survive rounding.
    const int grown = static_cast<int>(std::floor(1.6 * r_eq + 1e-9));
    return std::min(base_offset, std::max(6, grown));
}

BinaryMask dilate(const BinaryMask& mask, int radius) {
    if (radius < 0) throw InputError("dilate: radius must be >= 0");
    return shape::dilate(mask, radius);
}

BinaryMask approximate_cell_boundary(const PlanarImage& rgb, const seg::NucleusMask& nucleus,
                                     int delta2) {
    const BinaryMask fallback = dilate(nucleus.mask, delta2);

    const PlanarImage hsv = img::convert(rgb, Colorspace::HSV);
    Plane s_scaled("s_scaled", rgb.width, rgb.height);
    const Plane& sp = hsv.plane("S");
    for (size_t i = 0; i < s_scaled.size(); ++i) s_scaled.data[i] = sp.data[i] * 255.0;

    seg::ChromaticScoreMap sat{s_scaled};
    const seg::OtsuResult otsu = seg::otsu_segment(sat, 1.0);
    if (otsu.degenerate) return fallback;

    const auto [cx, cy] = shape::centroid(nucleus.mask);
    const int px = std::clamp(static_cast<int>(std::lround(cx)), 0, rgb.width - 1);
    const int py = std::clamp(static_cast<int>(std::lround(cy)), 0, rgb.height - 1);

    const BinaryMask refined = seg::refine(otsu.mask);
    const auto comps = shape::connected_components(refined);
    for (const auto& pix : comps) {
        BinaryMask cm = shape::component_mask(refined, pix);
        if (cm.at(px, py)) return mask_or(cm, fallback);
    }
    return fallback;
}

ZonalDecomposition decompose(const seg::NucleusMask& nucleus, const BinaryMask& cell,
                             int d1, int d2) {
    if (!mask_subset(nucleus.mask, cell))
        throw InputError("decompose: nucleus must be contained in the cell boundary");

    ZonalDecomposition z;
    z.base_offsets = {d1, d2};
    const int r1 = adaptive_radius(nucleus.area, d1);
    const int r2 = adaptive_radius(nucleus.area, d2);
    z.radii = {r1, r2};

    const BinaryMask e1 = dilate(nucleus.mask, r1);
    const BinaryMask e2 = dilate(nucleus.mask, r2);
    z.nucleus = nucleus.mask;
    z.proximal = mask_and(mask_diff(e1, nucleus.mask), cell);
    z.distal = mask_and(mask_diff(e2, e1), cell);
    z.cell = cell;
    z.empty_proximal = z.proximal.empty_mask();
    z.empty_distal = z.distal.empty_mask();
    return z;
}

PlanarImage render_overlay(const PlanarImage& rgb, const ZonalDecomposition& zones) {
    if (rgb.colorspace != Colorspace::RGB8) throw InputError("render_overlay: expects RGB8");
    PlanarImage out = rgb;
    Plane& r = out.plane("R");
    Plane& g = out.plane("G");
    Plane& b = out.plane("B");
    auto blend = [&](const BinaryMask& m, const double tint[3]) {
        for (size_t i = 0; i < m.bits.size(); ++i) {
            if (!m.bits[i]) continue;
            r.data[i] = (1.0 - kOverlayAlpha) * r.data[i] + kOverlayAlpha * tint[0];
            g.data[i] = (1.0 - kOverlayAlpha) * g.data[i] + kOverlayAlpha * tint[1];
            b.data[i] = (1.0 - kOverlayAlpha) * b.data[i] + kOverlayAlpha * tint[2];
        }
    };
    blend(zones.nucleus, kPaletteNucleus);
    blend(zones.proximal, kPaletteProximal);
    blend(zones.distal, kPaletteDistal);
    return out;
}

}  // namespace prism::zones
