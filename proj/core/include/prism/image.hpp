#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace prism {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SegmentationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Working size of every standardized image.
inline constexpr int kWorkingSize = 256;

enum class Colorspace { RGB8, LAB, HSV, GRAY, SCORE };

std::string to_string(Colorspace cs);

/// A single named plane of real values, row-major.
struct Plane {
    std::string name;
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Plane() = default;
    Plane(std::string n, int w, int h, double fill = 0.0)
        : name(std::move(n)), width(w), height(h),
          data(static_cast<size_t>(w) * h, fill) {}

    double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
    size_t size() const { return data.size(); }
};

/// Multi-channel 2-D raster; channels carry role tags through their names.
/// RGB8: planes R,G,B in [0,255].  LAB: L in [0,100], a,b in [-128,127].
/// HSV: H in [0,360), S,V in [0,1].  GRAY: one plane in [0,255].
struct PlanarImage {
    int width = 0;
    int height = 0;
    Colorspace colorspace = Colorspace::RGB8;
    std::vector<Plane> channels;

    PlanarImage() = default;
    PlanarImage(int w, int h, Colorspace cs) : width(w), height(h), colorspace(cs) {}

    const Plane& plane(const std::string& name) const;
    Plane& plane(const std::string& name);
    bool has_plane(const std::string& name) const;
    void add_plane(Plane p);
};

struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> bits;  // 0/1

    BinaryMask() = default;
    BinaryMask(int w, int h, bool fill = false)
        : width(w), height(h), bits(static_cast<size_t>(w) * h, fill ? 1 : 0) {}

    bool at(int x, int y) const { return bits[static_cast<size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) { bits[static_cast<size_t>(y) * width + x] = v ? 1 : 0; }
    size_t count() const;
    bool empty_mask() const { return count() == 0; }
    bool same_shape(const BinaryMask& o) const { return width == o.width && height == o.height; }

    bool operator==(const BinaryMask& o) const = default;
};

// Pointwise set algebra; shapes must match.
BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_diff(const BinaryMask& a, const BinaryMask& b);  // a \ b
bool mask_subset(const BinaryMask& a, const BinaryMask& b);      // a ⊆ b
bool mask_disjoint(const BinaryMask& a, const BinaryMask& b);

}  // namespace prism
