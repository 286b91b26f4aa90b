#include "prism/segmentation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "prism/imgproc.hpp"
#include "prism/rng.hpp"

namespace prism::seg {

ChromaticScoreMap chromatic_score(const Plane& b_scaled, const Plane& s_scaled) {
    if (b_scaled.width != s_scaled.width || b_scaled.height != s_scaled.height)
        throw InputError("chromatic_score: plane dimension mismatch");
    ChromaticScoreMap out;
    out.scores = Plane("S_chroma", b_scaled.width, b_scaled.height);
    for (size_t i = 0; i < out.scores.size(); ++i)
        out.scores.data[i] = (255.0 - b_scaled.data[i]) + 0.5 * s_scaled.data[i];
    return out;
}

int otsu_threshold_bin(const std::vector<double>& hist256) {
    const int n = static_cast<int>(hist256.size());
    double total = 0.0, total_mean = 0.0;
    for (int i = 0; i < n; ++i) {
        total += hist256[i];
        total_mean += i * hist256[i];
    }
    if (total <= 0.0) return -1;
    total_mean /= total;

    int best = -1;
    double best_var = -1.0;
    double w0 = 0.0, sum0 = 0.0;
    for (int t = 1; t < n; ++t) {
        w0 += hist256[t - 1];
        sum0 += (t - 1) * hist256[t - 1];
        const double w1 = total - w0;
        if (w0 <= 0.0 || w1 <= 0.0) continue;
        const double mu0 = sum0 / w0;
        const double mu1 = (total_mean * total - sum0) / w1;
        const double var = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if (var > best_var + 1e-12) {
            best_var = var;
            best = t;
        }
    }
    return best;
}

OtsuResult otsu_segment(const ChromaticScoreMap& scores, double crop_fraction) {
    if (crop_fraction <= 0.0 || crop_fraction > 1.0)
        throw InputError("otsu_segment: crop_fraction must be in (0,1]");
    const Plane& s = scores.scores;
    const int W = s.width, H = s.height;
    const int cw = std::max(1, static_cast<int>(std::lround(W * crop_fraction)));
    const int ch = std::max(1, static_cast<int>(std::lround(H * crop_fraction)));
    const int x0 = (W - cw) / 2, y0 = (H - ch) / 2;

    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    for (int y = y0; y < y0 + ch; ++y)
        for (int x = x0; x < x0 + cw; ++x) {
            mn = std::min(mn, s.at(x, y));
            mx = std::max(mx, s.at(x, y));
        }

    OtsuResult r;
    if (!(mx > mn)) {
        r.degenerate = true;
        r.mask = BinaryMask(W, H);
        return r;
    }

    constexpr int kBins = 256;
    std::vector<double> hist(kBins, 0.0);
    const double scale = kBins / (mx - mn);
    for (int y = y0; y < y0 + ch; ++y)
        for (int x = x0; x < x0 + cw; ++x) {
            int b = static_cast<int>((s.at(x, y) - mn) * scale);
            hist[std::clamp(b, 0, kBins - 1)] += 1.0;
        }

    const int t = otsu_threshold_bin(hist);
    if (t < 0) {
        r.degenerate = true;
        r.mask = BinaryMask(W, H);
        return r;
    }
    r.threshold = mn + t * (mx - mn) / kBins;
    r.mask = BinaryMask(W, H);
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) r.mask.set(x, y, s.at(x, y) >= r.threshold);
    return r;
}

BinaryMask kmeans_fallback(const PlanarImage& lab, const Plane& saturation, int k,
                           uint64_t seed, double min_saturation) {
    const Plane& L = lab.plane("L");
    const Plane& a = lab.plane("a");
    const Plane& b = lab.plane("b");
    const int n = static_cast<int>(L.size());
    if (n == 0) throw InputError("kmeans_fallback: empty image");

    std::mt19937_64 rng(seed);
    auto dist2 = [&](int i, const std::array<double, 3>& c) {
        const double dl = L.data[i] - c[0];
        const double da = a.data[i] - c[1];
        const double db = b.data[i] - c[2];
        return dl * dl + da * da + db * db;
    };

    // k-means++ seeding
    std::vector<std::array<double, 3>> cent;
    {
        std::uniform_int_distribution<int> pick(0, n - 1);
        const int first = pick(rng);
        cent.push_back({L.data[first], a.data[first], b.data[first]});
        std::vector<double> d2(n);
        while (static_cast<int>(cent.size()) < k) {
            double total = 0.0;
            for (int i = 0; i < n; ++i) {
                double best = dist2(i, cent[0]);
                for (size_t c = 1; c < cent.size(); ++c) best = std::min(best, dist2(i, cent[c]));
                d2[i] = best;
                total += best;
            }
            if (total <= 0.0) {
                // fewer distinct colors than k: duplicate an existing centroid
                cent.push_back(cent.back());
                continue;
            }
            std::uniform_real_distribution<double> u(0.0, total);
            double r = u(rng), acc = 0.0;
            int chosen = n - 1;
            for (int i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= r) {
                    chosen = i;
                    break;
                }
            }
            cent.push_back({L.data[chosen], a.data[chosen], b.data[chosen]});
        }
    }

    std::vector<int> assign(n, 0);
    for (int iter = 0; iter < 100; ++iter) {
        for (int i = 0; i < n; ++i) {
            int best_c = 0;
            double best_d = dist2(i, cent[0]);
            for (int c = 1; c < k; ++c) {
                const double d = dist2(i, cent[c]);
                if (d < best_d) {
                    best_d = d;
                    best_c = c;
                }
            }
            assign[i] = best_c;
        }
        std::vector<std::array<double, 3>> sum(k, {0, 0, 0});
        std::vector<int> cnt(k, 0);
        for (int i = 0; i < n; ++i) {
            sum[assign[i]][0] += L.data[i];
            sum[assign[i]][1] += a.data[i];
            sum[assign[i]][2] += b.data[i];
            cnt[assign[i]]++;
        }
        double shift = 0.0;
        for (int c = 0; c < k; ++c) {
            if (cnt[c] == 0) continue;  // empty clusters keep their centroid
            std::array<double, 3> nc = {sum[c][0] / cnt[c], sum[c][1] / cnt[c],
                                        sum[c][2] / cnt[c]};
            shift = std::max(shift, std::sqrt((nc[0] - cent[c][0]) * (nc[0] - cent[c][0]) +
                                              (nc[1] - cent[c][1]) * (nc[1] - cent[c][1]) +
                                              (nc[2] - cent[c][2]) * (nc[2] - cent[c][2])));
            cent[c] = nc;
        }
        if (shift < 1e-4) break;
    }

    // pick: lowest mean L among adequately saturated clusters, else lowest L
    std::vector<double> mean_L(k, 0.0), mean_sat(k, 0.0);
    std::vector<int> cnt(k, 0);
    for (int i = 0; i < n; ++i) {
        mean_L[assign[i]] += L.data[i];
        mean_sat[assign[i]] += saturation.data[i];
        cnt[assign[i]]++;
    }
    int pick = -1, pick_any = -1;
    for (int c = 0; c < k; ++c) {
        if (cnt[c] == 0) continue;  // drop empty clusters
        mean_L[c] /= cnt[c];
        mean_sat[c] /= cnt[c];
        if (pick_any < 0 || mean_L[c] < mean_L[pick_any]) pick_any = c;
        if (mean_sat[c] >= min_saturation && (pick < 0 || mean_L[c] < mean_L[pick])) pick = c;
    }
    if (pick < 0) pick = pick_any;
    if (pick < 0) throw SegmentationFailure("kmeans_fallback: no non-empty cluster");

    BinaryMask out(lab.width, lab.height);
    for (int i = 0; i < n; ++i) out.bits[i] = (assign[i] == pick) ? 1 : 0;
    return out;
}

BinaryMask refine(const BinaryMask& mask, int radius) {
    return shape::fill_holes(shape::close_mask(shape::open_mask(mask, radius), radius));
}

NucleusMask select_nucleus(const BinaryMask& mask, const Plane& s_scaled,
                           double min_component_fraction) {
    const double frame = static_cast<double>(mask.width) * mask.height;
    const double min_area = min_component_fraction * frame;

    auto comps = shape::connected_components(mask);
    std::vector<ComponentCandidate> survivors;
    for (const auto& pix : comps) {
        if (static_cast<double>(pix.size()) < min_area) continue;
        BinaryMask cm = shape::component_mask(mask, pix);
        if (shape::touches_border(cm)) continue;
        ComponentCandidate cand;
        const auto d = shape::describe(cm);
        cand.area = d.area;
        cand.solidity = d.solidity;
        cand.circularity = d.circularity;
        double ssum = 0.0;
        for (int idx : pix) ssum += s_scaled.data[idx];
        cand.mean_saturation = ssum / static_cast<double>(pix.size());
        cand.fitness = 0.55 * cand.solidity + 0.35 * cand.circularity +
                       0.10 * (cand.mean_saturation / 255.0);
        cand.mask = std::move(cm);
        survivors.push_back(std::move(cand));
    }
    if (survivors.empty())
        throw SegmentationFailure("select_nucleus: no component survives filtering");

    const ComponentCandidate* best = &survivors[0];
    for (const auto& c : survivors) {
        if (c.fitness > best->fitness + 1e-12) {
            best = &c;
        } else if (std::abs(c.fitness - best->fitness) <= 1e-12) {
            if (c.area > best->area) {
                best = &c;
            } else if (c.area == best->area) {
                const auto [bx, by] = shape::centroid(best->mask);
                const auto [cx, cy] = shape::centroid(c.mask);
                if (cy < by || (cy == by && cx < bx)) best = &c;
            }
        }
    }
    NucleusMask nm;
    nm.mask = best->mask;
    nm.area = best->area;
    nm.equivalent_radius = std::sqrt(nm.area / M_PI);
    nm.fitness = best->fitness;
    return nm;
}

NucleusMask segment(const PlanarImage& rgb, const SegmentationConfig& config) {
    if (rgb.colorspace != Colorspace::RGB8) throw InputError("segment: expects RGB8");

    PlanarImage lab = img::convert(rgb, Colorspace::LAB);
    lab = img::clahe_lightness(lab, config.clahe_clip, {config.clahe_grid, config.clahe_grid});
    const PlanarImage hsv = img::convert(rgb, Colorspace::HSV);

    Plane b_scaled("b_scaled", rgb.width, rgb.height);
    const Plane& bp = lab.plane("b");
    for (size_t i = 0; i < b_scaled.size(); ++i)
        b_scaled.data[i] = std::clamp(bp.data[i] + 128.0, 0.0, 255.0);
    Plane s_scaled("s_scaled", rgb.width, rgb.height);
    const Plane& sp = hsv.plane("S");
    for (size_t i = 0; i < s_scaled.size(); ++i) s_scaled.data[i] = sp.data[i] * 255.0;

    ChromaticScoreMap score = chromatic_score(b_scaled, s_scaled);
    score.scores = img::gaussian_blur(score.scores, config.blur_sigma);

    const double frame = static_cast<double>(rgb.width) * rgb.height;
    OtsuResult otsu = otsu_segment(score, config.crop_fraction);
    const double frac = otsu.degenerate ? 0.0 : static_cast<double>(otsu.mask.count()) / frame;

    BinaryMask raw;
    Provenance prov;
    if (otsu.degenerate || frac < config.min_area_fraction || frac > config.max_area_fraction) {
        raw = kmeans_fallback(lab, sp, config.kmeans_k, sub_seed(config.seed, "kmeans"),
                              config.fallback_min_saturation);
        prov = Provenance::kmeans_fallback;
    } else {
        raw = otsu.mask;
        prov = Provenance::otsu;
    }

    NucleusMask nm = select_nucleus(refine(raw, config.refine_radius), s_scaled,
                                    config.min_component_fraction);
    nm.provenance = prov;
    const double nfrac = nm.area / frame;
    if (nfrac < config.min_area_fraction || nfrac > config.max_area_fraction)
        throw SegmentationFailure("segment: nucleus area fraction out of range");
    return nm;
}

}  // namespace prism::seg
