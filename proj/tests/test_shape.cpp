#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "prism/shape.hpp"

using namespace prism;
using test::disk_mask;
using test::rect_mask;

TEST_CASE("connected components: count, sizes, 8-connectivity") {
    BinaryMask m(16, 16);
    m.set(1, 1, true);
    m.set(2, 2, true);  // diagonal joins under 8-connectivity
    m.set(10, 10, true);
    auto comps = shape::connected_components(m);
    CHECK(comps.size() == 2);
    size_t total = 0;
    for (const auto& c : comps) total += c.size();
    CHECK(total == 3);
}

TEST_CASE("centroid and border detection") {
    auto m = rect_mask(20, 20, 4, 6, 8, 10);
    auto [cx, cy] = shape::centroid(m);
    CHECK(cx == doctest::Approx(6.0));
    CHECK(cy == doctest::Approx(8.0));
    CHECK_FALSE(shape::touches_border(m));
    m.set(0, 5, true);
    CHECK(shape::touches_border(m));
}

TEST_CASE("squared EDT matches brute force on random masks") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 24;
        BinaryMask m(n, n);
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x)
                if (u(rng) < 0.1) m.set(x, y, true);
        if (m.empty_mask()) continue;
        auto edt = shape::squared_edt(m);
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                double best = 1e18;
                for (int yy = 0; yy < n; ++yy)
                    for (int xx = 0; xx < n; ++xx)
                        if (m.at(xx, yy))
                            best = std::min(
                                best, double((x - xx) * (x - xx) + (y - yy) * (y - yy)));
                CHECK(edt[y * n + x] == doctest::Approx(best).epsilon(1e-12));
            }
    }
}

TEST_CASE("dilate: identity at radius 0, single pixel becomes a disk") {
    auto m = BinaryMask(31, 31);
    m.set(15, 15, true);
    CHECK(shape::dilate(m, 0) == m);
    auto d = shape::dilate(m, 5);
    for (int y = 0; y < 31; ++y)
        for (int x = 0; x < 31; ++x)
            CHECK(d.at(x, y) == ((x - 15) * (x - 15) + (y - 15) * (y - 15) <= 25));
}

TEST_CASE("dilate is extensive and monotone in radius") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        auto m = test::random_blob(64, 64, rng);
        auto d2 = shape::dilate(m, 2);
        auto d5 = shape::dilate(m, 5);
        CHECK(mask_subset(m, d2));
        CHECK(mask_subset(d2, d5));
    }
}

TEST_CASE("erode then dilate (open) removes specks, close+fill repairs holes") {
    auto m = disk_mask(64, 64, 32, 32, 12);
    m.set(3, 3, true);  // isolated speck
    auto opened = shape::open_mask(m, 2);
    CHECK_FALSE(opened.at(3, 3));

    auto holed = disk_mask(64, 64, 32, 32, 12);
    holed.set(32, 32, false);
    CHECK(shape::fill_holes(holed).at(32, 32));
}

TEST_CASE("disk circularity clamps to 1 and square lands near pi/4") {
    auto disk = disk_mask(101, 101, 50, 50, 30);
    auto dd = shape::describe(disk);
    CHECK(dd.circularity >= 0.95);
    CHECK(dd.solidity >= 0.98);
    CHECK(dd.roughness <= 1.05);

    auto square = rect_mask(60, 60, 10, 10, 49, 49);  // side 40
    auto sd = shape::describe(square);
    CHECK(std::abs(sd.circularity - 3.14159265 / 4.0) < 0.05);
    CHECK(sd.solidity == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("perimeter scales linearly with size for disks") {
    for (double r : {15.0, 30.0, 45.0}) {
        auto m = disk_mask(128, 128, 64, 64, r);
        const double p = shape::contour_perimeter(m);
        CHECK(p == doctest::Approx(2 * 3.14159265 * r).epsilon(0.05));
    }
}

TEST_CASE("convex hull of a rectangle") {
    auto m = rect_mask(40, 40, 5, 5, 24, 14);  // 20 x 10 of pixel centers: 19 x 9 extents
    auto h = shape::convex_hull(m);
    CHECK(h.area == doctest::Approx(19.0 * 9.0).epsilon(1e-9));
    CHECK(h.perimeter == doctest::Approx(2 * (19.0 + 9.0)).epsilon(1e-9));
}
