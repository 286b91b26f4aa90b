#include "prism/shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace prism::shape {

namespace {
constexpr double kInf = 1e30;
}

std::vector<std::vector<int>> connected_components(const BinaryMask& mask) {
    const int W = mask.width, H = mask.height;
    std::vector<int> label(static_cast<size_t>(W) * H, -1);
    std::vector<std::vector<int>> comps;
    std::vector<int> stack;
    for (int start = 0; start < W * H; ++start) {
        if (!mask.bits[start] || label[start] >= 0) continue;
        const int id = static_cast<int>(comps.size());
        comps.emplace_back();
        stack.clear();
        stack.push_back(start);
        label[start] = id;
        while (!stack.empty()) {
            const int idx = stack.back();
            stack.pop_back();
            comps[id].push_back(idx);
            const int x = idx % W, y = idx / W;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int nx = x + dx, ny = y + dy;
                    if (nx < 0 || ny < 0 || nx >= W || ny >= H) continue;
                    const int nidx = ny * W + nx;
                    if (mask.bits[nidx] && label[nidx] < 0) {
                        label[nidx] = id;
                        stack.push_back(nidx);
                    }
                }
            }
        }
        std::sort(comps[id].begin(), comps[id].end());
    }
    return comps;
}

BinaryMask component_mask(const BinaryMask& like, const std::vector<int>& pixels) {
    BinaryMask m(like.width, like.height);
    for (int idx : pixels) m.bits[idx] = 1;
    return m;
}

std::pair<double, double> centroid(const BinaryMask& mask) {
    double sx = 0, sy = 0, n = 0;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(x, y)) {
                sx += x;
                sy += y;
                n += 1;
            }
    if (n == 0) return {0.0, 0.0};
    return {sx / n, sy / n};
}

bool touches_border(const BinaryMask& mask) {
    const int W = mask.width, H = mask.height;
    for (int x = 0; x < W; ++x)
        if (mask.at(x, 0) || mask.at(x, H - 1)) return true;
    for (int y = 0; y < H; ++y)
        if (mask.at(0, y) || mask.at(W - 1, y)) return true;
    return false;
}

namespace {

// Felzenszwalb & Huttenlocher 1-D squared distance transform.
void dt1d(const std::vector<double>& f, std::vector<double>& d, int n) {
    std::vector<int> v(n);
    std::vector<double> z(n + 1);
    int k = 0;
    v[0] = 0;
    z[0] = -kInf;
    z[1] = kInf;
    for (int q = 1; q < n; ++q) {
        double s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
        while (s <= z[k]) {
            --k;
            s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kInf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        d[q] = (q - v[k]) * (q - v[k]) + f[v[k]];
    }
}

}  // namespace

std::vector<double> squared_edt(const BinaryMask& mask) {
    const int W = mask.width, H = mask.height;
    std::vector<double> grid(static_cast<size_t>(W) * H);
    for (size_t i = 0; i < grid.size(); ++i) grid[i] = mask.bits[i] ? 0.0 : kInf;

    std::vector<double> col(H), dcol(H);
    for (int x = 0; x < W; ++x) {
        for (int y = 0; y < H; ++y) col[y] = grid[static_cast<size_t>(y) * W + x];
        dt1d(col, dcol, H);
        for (int y = 0; y < H; ++y) grid[static_cast<size_t>(y) * W + x] = dcol[y];
    }
    std::vector<double> row(W), drow(W);
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) row[x] = grid[static_cast<size_t>(y) * W + x];
        dt1d(row, drow, W);
        for (int x = 0; x < W; ++x) grid[static_cast<size_t>(y) * W + x] = drow[x];
    }
    return grid;
}

BinaryMask dilate(const BinaryMask& mask, int radius) {
    if (radius <= 0) return mask;
    auto d2 = squared_edt(mask);
    BinaryMask out(mask.width, mask.height);
    const double r2 = static_cast<double>(radius) * radius;
    for (size_t i = 0; i < d2.size(); ++i) out.bits[i] = d2[i] <= r2 ? 1 : 0;
    return out;
}

BinaryMask erode(const BinaryMask& mask, int radius) {
    if (radius <= 0) return mask;
    // Pad with one background ring so out-of-frame counts as background.
    const int W = mask.width, H = mask.height;
    BinaryMask comp(W + 2, H + 2, true);
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) comp.set(x + 1, y + 1, !mask.at(x, y));
    auto d2 = squared_edt(comp);
    BinaryMask out(W, H);
    const double r2 = static_cast<double>(radius) * radius;
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x)
            out.set(x, y, mask.at(x, y) && d2[static_cast<size_t>(y + 1) * (W + 2) + x + 1] > r2);
    return out;
}

BinaryMask open_mask(const BinaryMask& mask, int radius) {
    return dilate(erode(mask, radius), radius);
}

BinaryMask close_mask(const BinaryMask& mask, int radius) {
    return erode(dilate(mask, radius), radius);
}

BinaryMask fill_holes(const BinaryMask& mask) {
    const int W = mask.width, H = mask.height;
    std::vector<uint8_t> outside(static_cast<size_t>(W) * H, 0);
    std::queue<int> q;
    auto push = [&](int x, int y) {
        if (x < 0 || y < 0 || x >= W || y >= H) return;
        const int idx = y * W + x;
        if (outside[idx] || mask.bits[idx]) return;
        outside[idx] = 1;
        q.push(idx);
    };
    for (int x = 0; x < W; ++x) {
        push(x, 0);
        push(x, H - 1);
    }
    for (int y = 0; y < H; ++y) {
        push(0, y);
        push(W - 1, y);
    }
    while (!q.empty()) {
        const int idx = q.front();
        q.pop();
        const int x = idx % W, y = idx / W;
        push(x + 1, y);
        push(x - 1, y);
        push(x, y + 1);
        push(x, y - 1);
    }
    BinaryMask out(W, H);
    for (size_t i = 0; i < out.bits.size(); ++i) out.bits[i] = mask.bits[i] || !outside[i];
    return out;
}

double contour_perimeter(const BinaryMask& mask) {
    const int W = mask.width, H = mask.height;
    // clockwise neighborhood, y pointing down
    static constexpr int dx8[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    static constexpr int dy8[8] = {0, 1, 1, 1, 0, -1, -1, -1};

    int sx = -1, sy = -1;
    for (int y = 0; y < H && sx < 0; ++y)
        for (int x = 0; x < W; ++x)
            if (mask.at(x, y)) {
                sx = x;
                sy = y;
                break;
            }
    if (sx < 0) return 0.0;

    auto fg = [&](int x, int y) { return x >= 0 && y >= 0 && x < W && y < H && mask.at(x, y); };

    // Moore tracing: from each boundary pixel, sweep clockwise starting one
    // past the backtrack direction.
    int cx = sx, cy = sy;
    int back = 4;  // start pixel entered "from the west" (nothing above or left of it)
    const double diag_w = (1.0 + std::sqrt(2.0)) / 2.0;
    double perim = 0.0;
    const int start_x = sx, start_y = sy;
    int first_dir = -1;
    size_t guard = mask.bits.size() * 4 + 16;
    while (guard-- > 0) {
        int dir = -1;
        for (int i = 0; i < 8; ++i) {
            const int d = (back + 1 + i) % 8;
            if (fg(cx + dx8[d], cy + dy8[d])) {
                dir = d;
                break;
            }
        }
        if (dir < 0) return 0.0;  // isolated pixel
        if (cx == start_x && cy == start_y) {
            if (first_dir < 0)
                first_dir = dir;
            else if (dir == first_dir)
                break;  // Jacob's stopping criterion
        }
        perim += (dx8[dir] != 0 && dy8[dir] != 0) ? diag_w : 1.0;
        cx += dx8[dir];
        cy += dy8[dir];
        back = (dir + 4) % 8;
    }
    return perim;
}

HullStats convex_hull(const BinaryMask& mask) {
    std::vector<std::pair<int, int>> pts;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(x, y)) pts.emplace_back(x, y);
    HullStats hs;
    if (pts.size() < 3) return hs;
    std::sort(pts.begin(), pts.end());
    auto cross = [](const std::pair<int, int>& o, const std::pair<int, int>& a,
                    const std::pair<int, int>& b) {
        return static_cast<long long>(a.first - o.first) * (b.second - o.second) -
               static_cast<long long>(a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<int, int>> hull(2 * pts.size());
    size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    const size_t lower = k + 1;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    double area2 = 0.0, perim = 0.0;
    for (size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        area2 += static_cast<double>(a.first) * b.second - static_cast<double>(b.first) * a.second;
        perim += std::hypot(static_cast<double>(b.first - a.first),
                            static_cast<double>(b.second - a.second));
    }
    hs.area = std::abs(area2) / 2.0;
    hs.perimeter = perim;
    return hs;
}

Descriptors describe(const BinaryMask& mask) {
    Descriptors d;
    d.area = static_cast<double>(mask.count());
    if (d.area <= 0) return d;
    d.perimeter = contour_perimeter(mask);
    const HullStats hull = convex_hull(mask);
    d.circularity = (d.perimeter > 0)
                        ? std::min(1.0, 4.0 * M_PI * d.area / (d.perimeter * d.perimeter))
                        : 1.0;
    d.solidity = (hull.area > 0) ? std::min(1.0, d.area / hull.area) : 1.0;
    d.roughness = (hull.perimeter > 0) ? std::max(1.0, d.perimeter / hull.perimeter) : 1.0;
    return d;
}

}  // namespace prism::shape
