#pragma once

#include <cmath>
#include <random>

#include "prism/image.hpp"

namespace prism::test {

inline BinaryMask disk_mask(int w, int h, double cx, double cy, double r) {
    BinaryMask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) m.set(x, y, true);
    return m;
}

inline BinaryMask rect_mask(int w, int h, int x0, int y0, int x1, int y1) {
    BinaryMask m(w, h);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) m.set(x, y, true);
    return m;
}

/// Random smooth blob away from the border: a wobbled disk.
inline BinaryMask random_blob(int w, int h, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double cx = w * (0.35 + 0.3 * u(rng));
    const double cy = h * (0.35 + 0.3 * u(rng));
    const double r0 = std::min(w, h) * (0.06 + 0.14 * u(rng));
    double amp[3], ph[3];
    for (int k = 0; k < 3; ++k) {
        amp[k] = 0.15 * u(rng);
        ph[k] = 6.2831853 * u(rng);
    }
    BinaryMask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double dx = x - cx, dy = y - cy;
            const double th = std::atan2(dy, dx);
            double r = 1.0;
            for (int k = 0; k < 3; ++k) r += amp[k] * std::cos((k + 2) * th + ph[k]);
            if (std::hypot(dx, dy) <= r0 * r) m.set(x, y, true);
        }
    return m;
}

inline PlanarImage solid_rgb(int w, int h, double r, double g, double b) {
    PlanarImage img(w, h, Colorspace::RGB8);
    img.add_plane(Plane("R", w, h, r));
    img.add_plane(Plane("G", w, h, g));
    img.add_plane(Plane("B", w, h, b));
    return img;
}

inline void paint(PlanarImage& img, const BinaryMask& where, double r, double g, double b) {
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            if (where.at(x, y)) {
                img.plane("R").at(x, y) = r;
                img.plane("G").at(x, y) = g;
                img.plane("B").at(x, y) = b;
            }
}

inline double dice(const BinaryMask& a, const BinaryMask& b) {
    size_t inter = 0, ca = 0, cb = 0;
    for (size_t i = 0; i < a.bits.size(); ++i) {
        inter += (a.bits[i] && b.bits[i]);
        ca += a.bits[i];
        cb += b.bits[i];
    }
    return (ca + cb) == 0 ? 1.0 : 2.0 * inter / static_cast<double>(ca + cb);
}

}  // namespace prism::test
