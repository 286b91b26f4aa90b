#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include <opencv2/imgproc.hpp>

#include "helpers.hpp"
#include "prism/imgproc.hpp"

using namespace prism;
using test::solid_rgb;

namespace {

std::string temp_png(const PlanarImage& img, const char* name) {
    const auto path = std::filesystem::temp_directory_path() / name;
    img::write_png(path.string(), img);
    return path.string();
}

double plane_stdev(const Plane& p) {
    double s = 0, s2 = 0;
    for (double v : p.data) {
        s += v;
        s2 += v * v;
    }
    const double n = static_cast<double>(p.data.size());
    return std::sqrt(std::max(0.0, s2 / n - (s / n) * (s / n)));
}

}  // namespace

TEST_CASE("load_standardize resizes to the working size") {
    auto big = solid_rgb(512, 512, 37, 90, 200);
    auto out = img::load_standardize_file(temp_png(big, "t_big.png"));
    CHECK(out.width == 256);
    CHECK(out.height == 256);
    for (const char* c : {"R", "G", "B"})
        for (double v : out.plane(c).data)
            CHECK(v == doctest::Approx(c[0] == 'R' ? 37 : c[0] == 'G' ? 90 : 200).epsilon(1e-12));
}

TEST_CASE("load_standardize is pixel-identical at 256x256") {
    PlanarImage src(256, 256, Colorspace::RGB8);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> u8(0, 255);
    for (const char* c : {"R", "G", "B"}) {
        Plane p(c, 256, 256);
        for (double& v : p.data) v = u8(rng);
        src.add_plane(std::move(p));
    }
    auto out = img::load_standardize_file(temp_png(src, "t_id.png"));
    for (const char* c : {"R", "G", "B"})
        CHECK(out.plane(c).data == src.plane(c).data);
}

TEST_CASE("standardization is idempotent") {
    auto src = solid_rgb(317, 203, 12, 200, 77);
    auto once = img::load_standardize_file(temp_png(src, "t_idem.png"));
    auto twice = img::load_standardize_file(temp_png(once, "t_idem2.png"));
    for (const char* c : {"R", "G", "B"})
        CHECK(once.plane(c).data == twice.plane(c).data);
}

TEST_CASE("convert to LAB hits the white point") {
    auto lab = img::convert(solid_rgb(4, 4, 255, 255, 255), Colorspace::LAB);
    CHECK(lab.plane("L").at(0, 0) == doctest::Approx(100.0).epsilon(0.005));
    CHECK(std::abs(lab.plane("a").at(0, 0)) < 0.5);
    CHECK(std::abs(lab.plane("b").at(0, 0)) < 0.5);
}

TEST_CASE("convert to HSV on a pure hue") {
    auto hsv = img::convert(solid_rgb(2, 2, 255, 0, 0), Colorspace::HSV);
    CHECK(hsv.plane("H").at(0, 0) == doctest::Approx(0.0));
    CHECK(hsv.plane("S").at(0, 0) == doctest::Approx(1.0));
    CHECK(hsv.plane("V").at(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("convert to GRAY uses the documented luma weights") {
    auto gray = img::convert(solid_rgb(2, 2, 10, 100, 250), Colorspace::GRAY);
    CHECK(gray.plane("gray").at(0, 0) ==
          doctest::Approx(0.299 * 10 + 0.587 * 100 + 0.114 * 250).epsilon(1e-12));
}

TEST_CASE("LAB conversion matches an independent reference within 0.5") {
    // reference: OpenCV's float Lab conversion
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> u8(0, 255);
    for (int trial = 0; trial < 50; ++trial) {
        const double r = (trial == 0) ? 58 : u8(rng);
        const double g = (trial == 0) ? 110 : u8(rng);
        const double b = (trial == 0) ? 165 : u8(rng);
        double L, a, bb;
        img::rgb_to_lab(r, g, b, L, a, bb);
        cv::Mat3f src(1, 1, cv::Vec3f(static_cast<float>(b / 255.0),
                                      static_cast<float>(g / 255.0),
                                      static_cast<float>(r / 255.0)));
        cv::Mat3f dst;
        cv::cvtColor(src, dst, cv::COLOR_BGR2Lab);
        const cv::Vec3f lab = dst(0, 0);
        CHECK(std::abs(L - lab[0]) < 0.5);
        CHECK(std::abs(a - lab[1]) < 0.5);
        CHECK(std::abs(bb - lab[2]) < 0.5);
    }
}

TEST_CASE("RGB -> LAB -> RGB round trip within 2 per channel") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> u8(0, 255);
    for (int trial = 0; trial < 200; ++trial) {
        const double r = u8(rng), g = u8(rng), b = u8(rng);
        double L, a, bb, r2, g2, b2;
        img::rgb_to_lab(r, g, b, L, a, bb);
        img::lab_to_rgb(L, a, bb, r2, g2, b2);
        CHECK(std::abs(r - r2) < 2.0);
        CHECK(std::abs(g - g2) < 2.0);
        CHECK(std::abs(b - b2) < 2.0);
    }
}

TEST_CASE("CLAHE leaves a constant image constant and never touches a,b") {
    PlanarImage lab(64, 64, Colorspace::LAB);
    lab.add_plane(Plane("L", 64, 64, 50.0));
    Plane pa("a", 64, 64), pb("b", 64, 64);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-100, 100);
    for (size_t i = 0; i < pa.data.size(); ++i) {
        pa.data[i] = u(rng);
        pb.data[i] = u(rng);
    }
    lab.add_plane(pa);
    lab.add_plane(pb);
    auto out = img::clahe_lightness(lab, 2.0, {8, 8});
    for (double v : out.plane("L").data) CHECK(v == doctest::Approx(50.0).epsilon(1e-9));
    CHECK(out.plane("a").data == pa.data);
    CHECK(out.plane("b").data == pb.data);
}

TEST_CASE("CLAHE raises contrast of a low-contrast ramp, like the reference") {
    const int n = 256;
    PlanarImage lab(n, n, Colorspace::LAB);
    Plane L("L", n, n);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) L.at(x, y) = 40.0 + 20.0 * x / (n - 1);
    lab.add_plane(L);
    lab.add_plane(Plane("a", n, n, 0.0));
    lab.add_plane(Plane("b", n, n, 0.0));

    auto out = img::clahe_lightness(lab, 2.0, {8, 8});
    const double in_sd = plane_stdev(L);
    const double out_sd = plane_stdev(out.plane("L"));
    CHECK(out_sd > in_sd);
    for (double v : out.plane("L").data) {
        CHECK(v >= 0.0);
        CHECK(v <= 100.0);
    }

    // the reference implementation agrees the ramp's contrast must go up
    cv::Mat1b m8(n, n);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) m8(y, x) = cv::saturate_cast<uchar>(L.at(x, y) / 100.0 * 255.0);
    cv::Mat1b ref;
    cv::createCLAHE(2.0, cv::Size(8, 8))->apply(m8, ref);
    cv::Scalar mi, si, mo, so;
    cv::meanStdDev(m8, mi, si);
    cv::meanStdDev(ref, mo, so);
    CHECK(so[0] > si[0]);
}

TEST_CASE("gaussian blur preserves a constant grid") {
    Plane p("x", 32, 32, 9.5);
    auto out = img::gaussian_blur(p, 2.0);
    for (double v : out.data) CHECK(v == doctest::Approx(9.5).epsilon(1e-12));
}

TEST_CASE("gaussian blur impulse response is the sampled kernel") {
    const int n = 41;
    const double sigma = 2.0;
    Plane p("x", n, n, 0.0);
    p.at(20, 20) = 1.0;
    auto out = img::gaussian_blur(p, sigma);

    const int radius = static_cast<int>(std::ceil(3 * sigma));
    std::vector<double> k(2 * radius + 1);
    double norm = 0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-i * i / (2 * sigma * sigma));
        norm += k[i + radius];
    }
    for (double& v : k) v /= norm;

    double total = 0;
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            const double expect = (std::abs(x - 20) <= radius && std::abs(y - 20) <= radius)
                                      ? k[x - 20 + radius] * k[y - 20 + radius]
                                      : 0.0;
            CHECK(out.at(x, y) == doctest::Approx(expect).epsilon(0).scale(1).epsilon(1e-6));
            total += out.at(x, y);
        }
    CHECK(total == doctest::Approx(1.0).epsilon(0.001));
}

TEST_CASE("gaussian blur commutes with flips") {
    const int n = 33;
    Plane p("x", n, n);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 255);
    for (double& v : p.data) v = u(rng);
    auto blurred = img::gaussian_blur(p, 1.7);

    Plane flipped("x", n, n);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) flipped.at(x, y) = p.at(n - 1 - x, y);
    auto fb = img::gaussian_blur(flipped, 1.7);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            CHECK(fb.at(x, y) == doctest::Approx(blurred.at(n - 1 - x, y)).epsilon(1e-9));
}
