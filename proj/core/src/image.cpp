#include "prism/image.hpp"

#include <algorithm>
#include <numeric>

namespace prism {

std::string to_string(Colorspace cs) {
    switch (cs) {
        case Colorspace::RGB8: return "RGB8";
        case Colorspace::LAB: return "LAB";
        case Colorspace::HSV: return "HSV";
        case Colorspace::GRAY: return "GRAY";
        case Colorspace::SCORE: return "SCORE";
    }
    return "?";
}

const Plane& PlanarImage::plane(const std::string& name) const {
    for (const auto& p : channels)
        if (p.name == name) return p;
    throw InputError("no such plane: " + name);
}

Plane& PlanarImage::plane(const std::string& name) {
    for (auto& p : channels)
        if (p.name == name) return p;
    throw InputError("no such plane: " + name);
}

bool PlanarImage::has_plane(const std::string& name) const {
    for (const auto& p : channels)
        if (p.name == name) return true;
    return false;
}

void PlanarImage::add_plane(Plane p) {
    if (!channels.empty() && (p.width != width || p.height != height))
        throw InputError("plane dimensions do not match image");
    if (channels.empty()) {
        width = p.width;
        height = p.height;
    }
    channels.push_back(std::move(p));
}

size_t BinaryMask::count() const {
    return static_cast<size_t>(std::accumulate(bits.begin(), bits.end(), size_t{0}));
}

static void check_shapes(const BinaryMask& a, const BinaryMask& b) {
    if (!a.same_shape(b)) throw InputError("mask shape mismatch");
}

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b) {
    check_shapes(a, b);
    BinaryMask r(a.width, a.height);
    for (size_t i = 0; i < r.bits.size(); ++i) r.bits[i] = a.bits[i] & b.bits[i];
    return r;
}

BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b) {
    check_shapes(a, b);
    BinaryMask r(a.width, a.height);
    for (size_t i = 0; i < r.bits.size(); ++i) r.bits[i] = a.bits[i] | b.bits[i];
    return r;
}

BinaryMask mask_diff(const BinaryMask& a, const BinaryMask& b) {
    check_shapes(a, b);
    BinaryMask r(a.width, a.height);
    for (size_t i = 0; i < r.bits.size(); ++i) r.bits[i] = a.bits[i] & static_cast<uint8_t>(!b.bits[i]);
    return r;
}

bool mask_subset(const BinaryMask& a, const BinaryMask& b) {
    check_shapes(a, b);
    for (size_t i = 0; i < a.bits.size(); ++i)
        if (a.bits[i] && !b.bits[i]) return false;
    return true;
}

bool mask_disjoint(const BinaryMask& a, const BinaryMask& b) {
    check_shapes(a, b);
    for (size_t i = 0; i < a.bits.size(); ++i)
        if (a.bits[i] && b.bits[i]) return false;
    return true;
}

}  // namespace prism
