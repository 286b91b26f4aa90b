#pragma once

#include <utility>
#include <vector>

#include "prism/image.hpp"

namespace prism::shape {

/// 8-connected components of the foreground; each entry is a pixel-index list.
std::vector<std::vector<int>> connected_components(const BinaryMask& mask);

BinaryMask component_mask(const BinaryMask& like, const std::vector<int>& pixels);

/// Centroid of the foreground pixel centers (x, y).
std::pair<double, double> centroid(const BinaryMask& mask);

bool touches_border(const BinaryMask& mask);

/// Exact squared Euclidean distance transform to the nearest foreground pixel.
/// Background-only grids get a large finite sentinel.
std::vector<double> squared_edt(const BinaryMask& mask);

/// Morphological dilation/erosion by a rasterized disk {d : |d|^2 <= r^2}.
/// Pixels outside the frame count as background for erosion.
BinaryMask dilate(const BinaryMask& mask, int radius);
BinaryMask erode(const BinaryMask& mask, int radius);

BinaryMask open_mask(const BinaryMask& mask, int radius);
BinaryMask close_mask(const BinaryMask& mask, int radius);

/// Fill interior holes: background not 4-reachable from the frame border.
BinaryMask fill_holes(const BinaryMask& mask);

/// Closed-contour length of a single connected component, Moore traced.
/// Straight steps weigh 1, diagonal steps (1+sqrt(2))/2 (corner-cut chain;
/// the plain sqrt(2) weight overshoots smooth boundaries by ~5%).
double contour_perimeter(const BinaryMask& mask);

struct HullStats {
    double area = 0.0;
    double perimeter = 0.0;
};

/// Convex hull of foreground pixel centers (monotone chain).
HullStats convex_hull(const BinaryMask& mask);

struct Descriptors {
    double area = 0.0;
    double perimeter = 0.0;
    double circularity = 0.0;   // 4*pi*A/P^2, clamped to <= 1
    double solidity = 0.0;      // A / hull area, clamped to <= 1
    double roughness = 1.0;     // P / hull perimeter, clamped to >= 1
};

Descriptors describe(const BinaryMask& mask);

}  // namespace prism::shape
