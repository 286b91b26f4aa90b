#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "prism/features.hpp"
#include "prism/zones.hpp"

using namespace prism;
using test::disk_mask;
using test::rect_mask;

namespace {

// Brute-force co-occurrence oracle: explicit pair enumeration per
// (distance, angle), symmetric accumulation, descriptor averaging.
feat::GlcmFeatures glcm_oracle(const Plane& gray, const BinaryMask& domain) {
    constexpr int L = 32;
    double mn = 1e300, mx = -1e300;
    for (size_t i = 0; i < domain.bits.size(); ++i)
        if (domain.bits[i]) {
            mn = std::min(mn, gray.data[i]);
            mx = std::max(mx, gray.data[i]);
        }
    feat::GlcmFeatures out;
    if (mn > mx) {
        out.degraded = true;
        return out;
    }
    auto level = [&](int x, int y) -> int {
        if (!domain.at(x, y)) return -1;
        if (mx == mn) return 0;
        return std::min(L - 1, static_cast<int>((gray.at(x, y) - mn) / (mx - mn) * L));
    };
    const int adx[4] = {1, 1, 0, -1}, ady[4] = {0, -1, -1, -1};
    double sc = 0, sh = 0, se = 0, sr = 0;
    int used = 0;
    for (int dist : {1, 3})
        for (int a = 0; a < 4; ++a) {
            std::vector<std::vector<double>> P(L, std::vector<double>(L, 0.0));
            double pairs = 0;
            for (int y = 0; y < gray.height; ++y)
                for (int x = 0; x < gray.width; ++x) {
                    const int i = level(x, y);
                    if (i < 0) continue;
                    const int nx = x + adx[a] * dist, ny = y + ady[a] * dist;
                    if (nx < 0 || ny < 0 || nx >= gray.width || ny >= gray.height) continue;
                    const int j = level(nx, ny);
                    if (j < 0) continue;
                    P[i][j] += 1;
                    P[j][i] += 1;
                    pairs += 2;
                }
            if (pairs == 0) continue;
            double c = 0, h = 0, e = 0, mi = 0, mj = 0;
            for (int i = 0; i < L; ++i)
                for (int j = 0; j < L; ++j) {
                    const double p = P[i][j] / pairs;
                    c += p * (i - j) * (i - j);
                    h += p / (1.0 + (i - j) * (i - j));
                    e += p * p;
                    mi += i * p;
                    mj += j * p;
                }
            double vi = 0, vj = 0, cov = 0;
            for (int i = 0; i < L; ++i)
                for (int j = 0; j < L; ++j) {
                    const double p = P[i][j] / pairs;
                    vi += p * (i - mi) * (i - mi);
                    vj += p * (j - mj) * (j - mj);
                    cov += p * (i - mi) * (j - mj);
                }
            sc += c;
            sh += h;
            se += e;
            sr += (vi > 0 && vj > 0) ? cov / std::sqrt(vi * vj) : 0.0;
            ++used;
        }
    if (used == 0) {
        out.degraded = true;
        return out;
    }
    out.contrast = sc / used;
    out.homogeneity = sh / used;
    out.energy = se / used;
    out.correlation = sr / used;
    return out;
}

zones::ZonalDecomposition simple_zones(int size, double r_nuc) {
    seg::NucleusMask n;
    n.mask = disk_mask(size, size, size / 2.0, size / 2.0, r_nuc);
    n.area = static_cast<double>(n.mask.count());
    n.equivalent_radius = std::sqrt(n.area / 3.14159265);
    return zones::decompose(n, zones::dilate(n.mask, 30), 10, 24);
}

PlanarImage random_rgb(int size, std::mt19937_64& rng) {
    PlanarImage img(size, size, Colorspace::RGB8);
    std::uniform_real_distribution<double> u(0, 255);
    for (const char* c : {"R", "G", "B"}) {
        Plane p(c, size, size);
        for (double& v : p.data) v = u(rng);
        img.add_plane(std::move(p));
    }
    return img;
}

}  // namespace

TEST_CASE("morphology worked values") {
    auto disk = disk_mask(128, 128, 64, 64, 30);
    auto cell = disk_mask(128, 128, 64, 64, 60);
    auto mf = feat::morphology_features(disk, cell);
    CHECK(mf.circularity >= 0.95);
    CHECK(mf.solidity >= 0.98);
    CHECK(mf.boundary_roughness <= 1.05);
    CHECK(mf.area == doctest::Approx(double(disk.count())));

    auto n100 = rect_mask(64, 64, 10, 10, 19, 19);  // area 100
    auto c400 = rect_mask(64, 64, 5, 5, 24, 24);    // area 400
    CHECK(feat::morphology_features(n100, c400).nc_ratio == doctest::Approx(0.25));

    auto square = rect_mask(64, 64, 10, 10, 49, 49);
    CHECK(std::abs(feat::morphology_features(square, square).circularity - 3.14159265 / 4) <
          0.05);
}

TEST_CASE("color stats: constants, two-pixel sigma, empty domain") {
    auto img = test::solid_rgb(8, 8, 77, 77, 77);
    Plane gray("gray", 8, 8, 77.0);
    BinaryMask all(8, 8, true);
    auto cs = feat::color_stats(img, gray, all);
    for (int c = 0; c < 4; ++c) {
        CHECK(cs.mean[c] == doctest::Approx(77.0));
        CHECK(cs.stdev[c] == doctest::Approx(0.0));
    }

    auto img2 = test::solid_rgb(2, 1, 0, 0, 0);
    img2.plane("R").at(1, 0) = 255;
    Plane gray2("gray", 2, 1, 0.0);
    gray2.at(1, 0) = 255;
    BinaryMask both(2, 1, true);
    auto cs2 = feat::color_stats(img2, gray2, both);
    CHECK(cs2.mean[0] == doctest::Approx(127.5));
    CHECK(cs2.stdev[0] == doctest::Approx(127.5));

    BinaryMask none(8, 8);
    auto cs3 = feat::color_stats(img, gray, none);
    CHECK(cs3.degraded);
    for (int c = 0; c < 4; ++c) CHECK(cs3.mean[c] == 0.0);
}

TEST_CASE("spatial gradients: formula and antisymmetry") {
    feat::ColorStats a, b;
    a.mean = {200, 10, 20, 30};
    a.stdev = {5, 6, 7, 8};
    b.mean = {150, 10, 20, 30};
    b.stdev = {5, 6, 7, 8};
    auto d = feat::spatial_gradients(a, b);
    CHECK(d[0] == doctest::Approx(50.0));
    for (int i = 1; i < 8; ++i) CHECK(d[i] == doctest::Approx(0.0));
    auto neg = feat::spatial_gradients(b, a);
    for (int i = 0; i < 8; ++i) CHECK(neg[i] == doctest::Approx(-d[i]));
}

TEST_CASE("GLCM degenerate conventions on a constant region") {
    Plane gray("gray", 16, 16, 42.0);
    BinaryMask all(16, 16, true);
    auto g = feat::glcm_features(gray, all);
    CHECK(g.contrast == doctest::Approx(0.0));
    CHECK(g.homogeneity == doctest::Approx(1.0));
    CHECK(g.energy == doctest::Approx(1.0));
    CHECK(g.correlation == doctest::Approx(0.0));
    CHECK_FALSE(g.degraded);

    BinaryMask none(16, 16);
    CHECK(feat::glcm_features(gray, none).degraded);
}

TEST_CASE("GLCM checkerboard: two levels quantize to the full 0..31 spread") {
    // A height-1 alternating strip has only horizontal pairs, all between
    // levels 0 and 31, so contrast is 31^2 per unit step.
    Plane gray("gray", 16, 1, 0.0);
    for (int x = 0; x < 16; ++x) gray.at(x, 0) = (x % 2) ? 200.0 : 50.0;
    BinaryMask strip(16, 1, true);
    auto g = feat::glcm_features(gray, strip);
    CHECK(g.contrast == doctest::Approx(31.0 * 31.0).epsilon(1e-9));
    auto o = glcm_oracle(gray, strip);
    CHECK(g.contrast == doctest::Approx(o.contrast).epsilon(1e-12));

    Plane board("gray", 8, 8, 0.0);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) board.at(x, y) = ((x + y) % 2) ? 180.0 : 20.0;
    BinaryMask all(8, 8, true);
    auto gb = feat::glcm_features(board, all);
    auto ob = glcm_oracle(board, all);
    CHECK(gb.contrast == doctest::Approx(ob.contrast).epsilon(1e-9));
    CHECK(gb.homogeneity == doctest::Approx(ob.homogeneity).epsilon(1e-9));
}

TEST_CASE("GLCM matches the brute-force oracle on random fixtures") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(0, 255);
    std::uniform_real_distribution<double> keep(0, 1);
    for (int t = 0; t < 60; ++t) {
        const int n = 8;
        Plane gray("gray", n, n);
        for (double& v : gray.data) v = std::floor(u(rng) / 32.0) * 32.0;  // 8 gray levels
        BinaryMask dom(n, n);
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) dom.set(x, y, keep(rng) < 0.8);
        auto g = feat::glcm_features(gray, dom);
        auto o = glcm_oracle(gray, dom);
        CHECK(g.degraded == o.degraded);
        if (g.degraded) continue;
        CHECK(g.contrast == doctest::Approx(o.contrast).epsilon(1e-9));
        CHECK(g.homogeneity == doctest::Approx(o.homogeneity).epsilon(1e-9));
        CHECK(g.energy == doctest::Approx(o.energy).epsilon(1e-9));
        CHECK(g.correlation == doctest::Approx(o.correlation).epsilon(1e-9));
    }
}

TEST_CASE("GLCM descriptors are invariant under 90-degree rotation") {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> u(0, 255);
    for (int t = 0; t < 20; ++t) {
        const int n = 12;
        Plane gray("gray", n, n);
        for (double& v : gray.data) v = u(rng);
        Plane rot("gray", n, n);
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) rot.at(n - 1 - y, x) = gray.at(x, y);
        BinaryMask all(n, n, true);
        auto a = feat::glcm_features(gray, all);
        auto b = feat::glcm_features(rot, all);
        CHECK(a.contrast == doctest::Approx(b.contrast).epsilon(1e-9));
        CHECK(a.homogeneity == doctest::Approx(b.homogeneity).epsilon(1e-9));
        CHECK(a.energy == doctest::Approx(b.energy).epsilon(1e-9));
        CHECK(a.correlation == doctest::Approx(b.correlation).epsilon(1e-9));
    }
}

TEST_CASE("LBP: constant region puts all mass in the last group") {
    Plane gray("gray", 10, 10, 90.0);
    BinaryMask all(10, 10, true);
    auto h = feat::lbp_histogram(gray, all);
    CHECK(h.bins[31] == doctest::Approx(1.0));
    CHECK(h.raw_count == doctest::Approx(64.0));  // 8x8 interior pixels
}

TEST_CASE("LBP: manual code 17 lands in group 2") {
    Plane gray("gray", 3, 3, 90.0);
    gray.at(1, 1) = 100.0;
    // (E,NE,N,NW,W,SW,S,SE) = (120,90,90,90,120,90,90,90) -> bits 10001000 -> 17
    gray.at(2, 1) = 120.0;  // E
    gray.at(2, 0) = 90.0;   // NE
    gray.at(1, 0) = 90.0;   // N
    gray.at(0, 0) = 90.0;   // NW
    gray.at(0, 1) = 120.0;  // W
    gray.at(0, 2) = 90.0;   // SW
    gray.at(1, 2) = 90.0;   // S
    gray.at(2, 2) = 90.0;   // SE
    BinaryMask center(3, 3);
    center.set(1, 1, true);
    auto h = feat::lbp_histogram(gray, center);
    CHECK(h.raw_count == doctest::Approx(1.0));
    CHECK(h.bins[17 / 8] == doctest::Approx(1.0));
}

TEST_CASE("LBP conserves mass") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0, 255);
    Plane gray("gray", 20, 20);
    for (double& v : gray.data) v = u(rng);
    auto dom = disk_mask(20, 20, 10, 10, 7);
    auto h = feat::lbp_histogram(gray, dom);
    double mass = 0;
    for (double b : h.bins) mass += b;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.raw_count > 0);
}

TEST_CASE("build_vector: stable length, finiteness, schema check") {
    const auto& schema = feat::default_schema();
    std::mt19937_64 rng(73);
    for (int t = 0; t < 50; ++t) {
        auto img = random_rgb(128, rng);
        auto z = simple_zones(128, 12 + (t % 10));
        auto v = feat::build_vector(img, z, schema);
        CHECK(v.values.size() == schema.size());
        CHECK(v.schema_id == schema.schema_id);
        for (double x : v.values) CHECK(std::isfinite(x));
    }
}

TEST_CASE("build_vector: empty distal zone degrades only its own blocks") {
    const auto& schema = feat::default_schema();
    std::mt19937_64 rng(79);
    auto img = random_rgb(128, rng);

    seg::NucleusMask n;
    n.mask = disk_mask(128, 128, 64, 64, 15);
    n.area = static_cast<double>(n.mask.count());
    n.equivalent_radius = std::sqrt(n.area / 3.14159265);

    auto z_full = zones::decompose(n, zones::dilate(n.mask, 40), 10, 24);
    auto z_cut = zones::decompose(n, zones::dilate(n.mask, z_full.radii.first), 10, 24);
    REQUIRE(z_cut.distal.empty_mask());
    REQUIRE_FALSE(z_cut.proximal.empty_mask());

    auto v_full = feat::build_vector(img, z_full, schema);
    auto v_cut = feat::build_vector(img, z_cut, schema);
    CHECK(v_cut.degraded_domains.count(feat::Domain::distal) == 1);
    CHECK(v_full.degraded_domains.count(feat::Domain::distal) == 0);

    for (size_t i = 0; i < schema.size(); ++i) {
        const auto dom = schema.defs[i].domain;
        if (dom == feat::Domain::distal || dom == feat::Domain::grad_z2) {
            CHECK(v_cut.values[i] == 0.0);
        } else if (dom == feat::Domain::nucleus || dom == feat::Domain::proximal) {
            CHECK(v_cut.values[i] == doctest::Approx(v_full.values[i]).epsilon(1e-12));
        }
    }
}
