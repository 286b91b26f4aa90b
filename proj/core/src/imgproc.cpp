#include "prism/imgproc.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include <opencv2/imgcodecs.hpp>

namespace prism::img {

namespace {

constexpr double kD65_Xn = 0.95047;
constexpr double kD65_Yn = 1.00000;
constexpr double kD65_Zn = 1.08883;

double srgb_linearize(double c) {
    return (c <= 0.04045) ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double srgb_delinearize(double c) {
    return (c <= 0.0031308) ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

double lab_f(double t) {
    constexpr double eps = 216.0 / 24389.0;   // (6/29)^3
    constexpr double kappa = 24389.0 / 27.0;  // (29/3)^3
    return (t > eps) ? std::cbrt(t) : (kappa * t + 16.0) / 116.0;
}

double lab_finv(double t) {
    constexpr double d = 6.0 / 29.0;
    return (t > d) ? t * t * t : 3.0 * d * d * (t - 4.0 / 29.0);
}

}  // namespace

void rgb_to_lab(double r, double g, double b, double& L, double& a, double& bb) {
    const double rl = srgb_linearize(r / 255.0);
    const double gl = srgb_linearize(g / 255.0);
    const double bl = srgb_linearize(b / 255.0);
    const double X = 0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl;
    const double Y = 0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl;
    const double Z = 0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl;
    const double fx = lab_f(X / kD65_Xn);
    const double fy = lab_f(Y / kD65_Yn);
    const double fz = lab_f(Z / kD65_Zn);
    L = 116.0 * fy - 16.0;
    a = 500.0 * (fx - fy);
    bb = 200.0 * (fy - fz);
}

void lab_to_rgb(double L, double a, double bb, double& r, double& g, double& b) {
    const double fy = (L + 16.0) / 116.0;
    const double fx = fy + a / 500.0;
    const double fz = fy - bb / 200.0;
    const double X = kD65_Xn * lab_finv(fx);
    const double Y = kD65_Yn * lab_finv(fy);
    const double Z = kD65_Zn * lab_finv(fz);
    const double rl = 3.2404542 * X - 1.5371385 * Y - 0.4985314 * Z;
    const double gl = -0.9692660 * X + 1.8760108 * Y + 0.0415560 * Z;
    const double bl = 0.0556434 * X - 0.2040259 * Y + 1.0572252 * Z;
    r = std::clamp(srgb_delinearize(rl) * 255.0, 0.0, 255.0);
    g = std::clamp(srgb_delinearize(gl) * 255.0, 0.0, 255.0);
    b = std::clamp(srgb_delinearize(bl) * 255.0, 0.0, 255.0);
}

void rgb_to_hsv(double r, double g, double b, double& h, double& s, double& v) {
    const double rn = r / 255.0, gn = g / 255.0, bn = b / 255.0;
    const double mx = std::max({rn, gn, bn});
    const double mn = std::min({rn, gn, bn});
    const double d = mx - mn;
    v = mx;
    s = (mx <= 0.0) ? 0.0 : d / mx;
    if (d <= 0.0) {
        h = 0.0;
    } else if (mx == rn) {
        h = 60.0 * std::fmod((gn - bn) / d, 6.0);
    } else if (mx == gn) {
        h = 60.0 * ((bn - rn) / d + 2.0);
    } else {
        h = 60.0 * ((rn - gn) / d + 4.0);
    }
    if (h < 0.0) h += 360.0;
    if (h >= 360.0) h -= 360.0;
}

PlanarImage from_rgb8(int width, int height, std::span<const uint8_t> rgb) {
    if (width <= 0 || height <= 0) throw InputError("zero-dimension image");
    if (rgb.size() != static_cast<size_t>(width) * height * 3)
        throw InputError("rgb buffer size mismatch");
    PlanarImage out(width, height, Colorspace::RGB8);
    Plane r("R", width, height), g("G", width, height), b("B", width, height);
    for (size_t i = 0; i < static_cast<size_t>(width) * height; ++i) {
        r.data[i] = rgb[3 * i + 0];
        g.data[i] = rgb[3 * i + 1];
        b.data[i] = rgb[3 * i + 2];
    }
    out.add_plane(std::move(r));
    out.add_plane(std::move(g));
    out.add_plane(std::move(b));
    return out;
}

Plane resize_bilinear(const Plane& src, int new_w, int new_h) {
    if (src.width == new_w && src.height == new_h) return src;
    Plane dst(src.name, new_w, new_h);
    const double sx = static_cast<double>(src.width) / new_w;
    const double sy = static_cast<double>(src.height) / new_h;
    for (int y = 0; y < new_h; ++y) {
        const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, src.height - 1.0);
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, src.height - 1);
        const double wy = fy - y0;
        for (int x = 0; x < new_w; ++x) {
            const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, src.width - 1.0);
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, src.width - 1);
            const double wx = fx - x0;
            const double top = src.at(x0, y0) * (1 - wx) + src.at(x1, y0) * wx;
            const double bot = src.at(x0, y1) * (1 - wx) + src.at(x1, y1) * wx;
            dst.at(x, y) = top * (1 - wy) + bot * wy;
        }
    }
    return dst;
}

PlanarImage load_standardize(std::span<const uint8_t> encoded) {
    std::vector<uint8_t> buf(encoded.begin(), encoded.end());
    cv::Mat raw = cv::imdecode(buf, cv::IMREAD_COLOR);
    if (raw.empty()) throw FormatError("could not decode image bytes");
    if (raw.cols <= 0 || raw.rows <= 0) throw InputError("zero-dimension image");

    PlanarImage full(raw.cols, raw.rows, Colorspace::RGB8);
    Plane r("R", raw.cols, raw.rows), g("G", raw.cols, raw.rows), b("B", raw.cols, raw.rows);
    for (int y = 0; y < raw.rows; ++y) {
        const cv::Vec3b* row = raw.ptr<cv::Vec3b>(y);
        for (int x = 0; x < raw.cols; ++x) {
            b.at(x, y) = row[x][0];
            g.at(x, y) = row[x][1];
            r.at(x, y) = row[x][2];
        }
    }
    PlanarImage out(kWorkingSize, kWorkingSize, Colorspace::RGB8);
    out.add_plane(resize_bilinear(r, kWorkingSize, kWorkingSize));
    out.add_plane(resize_bilinear(g, kWorkingSize, kWorkingSize));
    out.add_plane(resize_bilinear(b, kWorkingSize, kWorkingSize));
    return out;
}

PlanarImage load_standardize_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open file: " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                               std::istreambuf_iterator<char>());
    return load_standardize(bytes);
}

PlanarImage convert(const PlanarImage& image, Colorspace target) {
    if (image.colorspace != Colorspace::RGB8)
        throw InputError("convert: source must be RGB8");
    const Plane& r = image.plane("R");
    const Plane& g = image.plane("G");
    const Plane& b = image.plane("B");
    PlanarImage out(image.width, image.height, target);
    switch (target) {
        case Colorspace::GRAY: {
            Plane gray("gray", image.width, image.height);
            for (size_t i = 0; i < gray.size(); ++i)
                gray.data[i] = 0.299 * r.data[i] + 0.587 * g.data[i] + 0.114 * b.data[i];
            out.add_plane(std::move(gray));
            return out;
        }
        case Colorspace::LAB: {
            Plane L("L", image.width, image.height);
            Plane a("a", image.width, image.height);
            Plane bb("b", image.width, image.height);
            for (size_t i = 0; i < L.size(); ++i)
                rgb_to_lab(r.data[i], g.data[i], b.data[i], L.data[i], a.data[i], bb.data[i]);
            out.add_plane(std::move(L));
            out.add_plane(std::move(a));
            out.add_plane(std::move(bb));
            return out;
        }
        case Colorspace::HSV: {
            Plane h("H", image.width, image.height);
            Plane s("S", image.width, image.height);
            Plane v("V", image.width, image.height);
            for (size_t i = 0; i < h.size(); ++i)
                rgb_to_hsv(r.data[i], g.data[i], b.data[i], h.data[i], s.data[i], v.data[i]);
            out.add_plane(std::move(h));
            out.add_plane(std::move(s));
            out.add_plane(std::move(v));
            return out;
        }
        default:
            throw InputError("convert: unsupported target " + to_string(target));
    }
}

PlanarImage clahe_lightness(const PlanarImage& lab, double clip_limit,
                            std::pair<int, int> tile_grid) {
    if (lab.colorspace != Colorspace::LAB) throw InputError("clahe: expects LAB image");
    if (clip_limit <= 0.0) throw InputError("clahe: clip_limit must be > 0");
    const auto [gx, gy] = tile_grid;
    if (gx < 1 || gy < 1) throw InputError("clahe: tile grid must be >= 1x1");

    const Plane& L = lab.plane("L");
    const int W = lab.width, H = lab.height;
    constexpr int kBins = 256;

    const int tw = (W + gx - 1) / gx;
    const int th = (H + gy - 1) / gy;

    auto bin_of = [](double v) {
        return std::clamp(static_cast<int>(std::lround(v / 100.0 * (kBins - 1))), 0, kBins - 1);
    };

    // Per-tile clipped-equalization LUTs.
    std::vector<std::vector<double>> luts(static_cast<size_t>(gx) * gy,
                                          std::vector<double>(kBins, 0.0));
    for (int ty = 0; ty < gy; ++ty) {
        for (int tx = 0; tx < gx; ++tx) {
            const int x0 = tx * tw, x1 = std::min(W, x0 + tw);
            const int y0 = ty * th, y1 = std::min(H, y0 + th);
            const double npix = static_cast<double>(x1 - x0) * (y1 - y0);
            if (npix <= 0) continue;
            std::vector<double> hist(kBins, 0.0);
            double value_sum = 0.0;
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x) {
                    hist[bin_of(L.at(x, y))] += 1.0;
                    value_sum += L.at(x, y);
                }
            // A flat tile has nothing to equalize; redistribution would still
            // shift its level, so pin it with an identity ramp through the
            // tile's own value.
            int occupied = 0, only_bin = 0;
            for (int i = 0; i < kBins; ++i)
                if (hist[i] > 0.0) {
                    ++occupied;
                    only_bin = i;
                }
            if (occupied == 1) {
                auto& lut = luts[static_cast<size_t>(ty) * gx + tx];
                const double mean = value_sum / npix;
                const double shift = mean - only_bin * 100.0 / (kBins - 1);
                for (int i = 0; i < kBins; ++i)
                    lut[i] = std::clamp(i * 100.0 / (kBins - 1) + shift, 0.0, 100.0);
                continue;
            }
            // Clip and redistribute the excess the way the classic
            // implementation does: an even integer batch to every bin, the
            // residual one-per-bin at a fixed stride. The strided residual is
            // what lets a low-contrast ramp gain contrast.
            const double clip =
                std::max(1.0, std::floor(clip_limit * npix / kBins));
            double excess = 0.0;
            for (auto& h : hist) {
                if (h > clip) {
                    excess += h - clip;
                    h = clip;
                }
            }
            const double batch = std::floor(excess / kBins);
            int residual = static_cast<int>(excess - batch * kBins);
            for (auto& h : hist) h += batch;
            if (residual > 0) {
                const int step = std::max(kBins / residual, 1);
                for (int i = 0; i < kBins && residual > 0; i += step) {
                    hist[i] += 1.0;
                    --residual;
                }
            }
            double cdf = 0.0;
            auto& lut = luts[static_cast<size_t>(ty) * gx + tx];
            for (int i = 0; i < kBins; ++i) {
                cdf += hist[i];
                lut[i] = cdf / npix * 100.0;  // back to L range
            }
        }
    }

    PlanarImage out = lab;
    Plane& Lo = out.plane("L");
    for (int y = 0; y < H; ++y) {
        const double tyf = std::clamp((y - th / 2.0) / th, 0.0, gy - 1.0);
        const int ty0 = static_cast<int>(tyf);
        const int ty1 = std::min(ty0 + 1, gy - 1);
        const double wy = tyf - ty0;
        for (int x = 0; x < W; ++x) {
            const double txf = std::clamp((x - tw / 2.0) / tw, 0.0, gx - 1.0);
            const int tx0 = static_cast<int>(txf);
            const int tx1 = std::min(tx0 + 1, gx - 1);
            const double wx = txf - tx0;
            const int bin = bin_of(L.at(x, y));
            const double v00 = luts[static_cast<size_t>(ty0) * gx + tx0][bin];
            const double v01 = luts[static_cast<size_t>(ty0) * gx + tx1][bin];
            const double v10 = luts[static_cast<size_t>(ty1) * gx + tx0][bin];
            const double v11 = luts[static_cast<size_t>(ty1) * gx + tx1][bin];
            const double top = v00 * (1 - wx) + v01 * wx;
            const double bot = v10 * (1 - wx) + v11 * wx;
            Lo.at(x, y) = std::clamp(top * (1 - wy) + bot * wy, 0.0, 100.0);
        }
    }
    return out;
}

Plane gaussian_blur(const Plane& plane, double sigma) {
    if (sigma <= 0.0) throw InputError("gaussian_blur: sigma must be > 0");
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
        sum += kernel[i + radius];
    }
    for (auto& k : kernel) k /= sum;

    const int W = plane.width, H = plane.height;
    Plane tmp(plane.name, W, H), out(plane.name, W, H);
    // horizontal pass, edge replication
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                const int xi = std::clamp(x + i, 0, W - 1);
                acc += kernel[i + radius] * plane.at(xi, y);
            }
            tmp.at(x, y) = acc;
        }
    }
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                const int yi = std::clamp(y + i, 0, H - 1);
                acc += kernel[i + radius] * tmp.at(x, yi);
            }
            out.at(x, y) = acc;
        }
    }
    return out;
}

void write_png(const std::string& path, const PlanarImage& image) {
    cv::Mat m;
    if (image.colorspace == Colorspace::RGB8) {
        const Plane& r = image.plane("R");
        const Plane& g = image.plane("G");
        const Plane& b = image.plane("B");
        m = cv::Mat(image.height, image.width, CV_8UC3);
        for (int y = 0; y < image.height; ++y) {
            cv::Vec3b* row = m.ptr<cv::Vec3b>(y);
            for (int x = 0; x < image.width; ++x) {
                row[x][0] = static_cast<uint8_t>(std::clamp(b.at(x, y), 0.0, 255.0));
                row[x][1] = static_cast<uint8_t>(std::clamp(g.at(x, y), 0.0, 255.0));
                row[x][2] = static_cast<uint8_t>(std::clamp(r.at(x, y), 0.0, 255.0));
            }
        }
    } else if (image.colorspace == Colorspace::GRAY) {
        const Plane& gp = image.channels.front();
        m = cv::Mat(image.height, image.width, CV_8UC1);
        for (int y = 0; y < image.height; ++y)
            for (int x = 0; x < image.width; ++x)
                m.at<uint8_t>(y, x) = static_cast<uint8_t>(std::clamp(gp.at(x, y), 0.0, 255.0));
    } else {
        throw InputError("write_png: only RGB8 or GRAY images");
    }
    if (!cv::imwrite(path, m)) throw InputError("write_png: cannot write " + path);
}

void write_mask_png(const std::string& path, const BinaryMask& mask) {
    cv::Mat m(mask.height, mask.width, CV_8UC1);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            m.at<uint8_t>(y, x) = mask.at(x, y) ? 255 : 0;
    if (!cv::imwrite(path, m)) throw InputError("write_mask_png: cannot write " + path);
}

}  // namespace prism::img
