#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "prism/image.hpp"

namespace prism::img {

/// Decode an encoded raster (PNG/TIFF/JPEG/BMP) and standardize to the
/// 256x256 RGB working size via bilinear resampling.
PlanarImage load_standardize(std::span<const uint8_t> encoded);

/// Same, from a file path.
PlanarImage load_standardize_file(const std::string& path);

/// Build a PlanarImage directly from interleaved 8-bit RGB (testing / synthesis).
PlanarImage from_rgb8(int width, int height, std::span<const uint8_t> rgb);

/// Bilinear resize of one plane to new dimensions.
Plane resize_bilinear(const Plane& src, int new_w, int new_h);

/// Standard colorspace conversions from an RGB8 image.
/// GRAY uses luma 0.299/0.587/0.114; LAB is sRGB-linearized, D65 white point.
PlanarImage convert(const PlanarImage& image, Colorspace target);

/// CLAHE on the L plane only; a and b pass through untouched.
PlanarImage clahe_lightness(const PlanarImage& lab, double clip_limit = 2.0,
                            std::pair<int, int> tile_grid = {8, 8});

/// Gaussian smoothing, kernel truncated at radius ceil(3*sigma),
/// borders handled by edge replication.
Plane gaussian_blur(const Plane& plane, double sigma);

// Scalar conversion helpers (exact per-pixel formulas used by convert()).
void rgb_to_lab(double r, double g, double b, double& L, double& a, double& bb);
void lab_to_rgb(double L, double a, double bb, double& r, double& g, double& b);
void rgb_to_hsv(double r, double g, double b, double& h, double& s, double& v);

/// Encode an RGB8 PlanarImage (or GRAY) as PNG bytes and write to path.
void write_png(const std::string& path, const PlanarImage& image);
void write_mask_png(const std::string& path, const BinaryMask& mask);

}  // namespace prism::img
