#include "prism/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "prism/imgproc.hpp"
#include "prism/shape.hpp"

namespace prism::feat {

std::string to_string(Domain d) {
    switch (d) {
        case Domain::nucleus: return "Mn";
        case Domain::proximal: return "Z1";
        case Domain::distal: return "Z2";
        case Domain::cell: return "C";
        case Domain::grad_z1: return "d(Mn,Z1)";
        case Domain::grad_z2: return "d(Mn,Z2)";
    }
    return "?";
}

std::string to_string(Family f) {
    switch (f) {
        case Family::morph: return "morph";
        case Family::color: return "color";
        case Family::glcm: return "glcm";
        case Family::lbp: return "lbp";
        case Family::ratio: return "ratio";
    }
    return "?";
}

namespace {

constexpr const char* kChannelNames[4] = {"R", "G", "B", "gray"};
constexpr const char* kGlcmNames[4] = {"contrast", "homogeneity", "energy", "correlation"};
constexpr const char* kSchemaVersion = "prism-features-v1";

std::string hash_names(const std::vector<FeatureDef>& defs) {
    uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::string_view s) {
        for (char c : s) {
            h ^= static_cast<uint8_t>(c);
            h *= 0x100000001b3ULL;
        }
        h ^= '\n';
        h *= 0x100000001b3ULL;
    };
    mix(kSchemaVersion);
    for (const auto& d : defs) mix(d.name);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

FeatureSchema make_default_schema() {
    FeatureSchema s;
    auto add = [&](std::string name, Domain d, Family f) {
        s.defs.push_back({std::move(name), d, f});
    };
    add("mn_area", Domain::nucleus, Family::morph);
    add("mn_circularity", Domain::nucleus, Family::morph);
    add("mn_solidity", Domain::nucleus, Family::morph);
    add("mn_roughness", Domain::nucleus, Family::morph);
    add("nc_ratio", Domain::cell, Family::ratio);

    const std::pair<std::string, Domain> domains[4] = {{"mn", Domain::nucleus},
                                                       {"z1", Domain::proximal},
                                                       {"z2", Domain::distal},
                                                       {"cell", Domain::cell}};
    for (const auto& [prefix, dom] : domains) {
        for (const char* c : kChannelNames) add(prefix + "_mu_" + c, dom, Family::color);
        for (const char* c : kChannelNames) add(prefix + "_sd_" + c, dom, Family::color);
        for (const char* g : kGlcmNames) add(prefix + "_glcm_" + g, dom, Family::glcm);
        for (int i = 0; i < 32; ++i) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "%02d", i);
            add(prefix + "_lbp_" + buf, dom, Family::lbp);
        }
    }
    const std::pair<std::string, Domain> grads[2] = {{"dz1", Domain::grad_z1},
                                                     {"dz2", Domain::grad_z2}};
    for (const auto& [prefix, dom] : grads) {
        for (const char* c : kChannelNames) add(prefix + "_dmu_" + c, dom, Family::color);
        for (const char* c : kChannelNames) add(prefix + "_dsd_" + c, dom, Family::color);
    }
    s.schema_id = hash_names(s.defs);
    return s;
}

}  // namespace

const FeatureSchema& default_schema() {
    static const FeatureSchema schema = make_default_schema();
    return schema;
}

MorphologyFeatures morphology_features(const BinaryMask& nucleus, const BinaryMask& cell) {
    const double a_cell = static_cast<double>(cell.count());
    const double a_n = static_cast<double>(nucleus.count());
    if (a_cell <= 0.0 || a_n <= 0.0)
        throw InputError("morphology_features: empty nucleus or cell mask");
    const auto d = shape::describe(nucleus);
    MorphologyFeatures m;
    m.area = d.area;
    m.circularity = d.circularity;
    m.solidity = d.solidity;
    m.boundary_roughness = d.roughness;
    m.nc_ratio = a_n / a_cell;
    return m;
}

ColorStats color_stats(const PlanarImage& rgb, const Plane& gray, const BinaryMask& domain) {
    const Plane* planes[4] = {&rgb.plane("R"), &rgb.plane("G"), &rgb.plane("B"), &gray};
    ColorStats cs;
    const double n = static_cast<double>(domain.count());
    if (n <= 0.0) {
        cs.degraded = true;
        return cs;
    }
    for (int c = 0; c < 4; ++c) {
        double sum = 0.0, sum2 = 0.0;
        const auto& p = planes[c]->data;
        for (size_t i = 0; i < domain.bits.size(); ++i) {
            if (!domain.bits[i]) continue;
            sum += p[i];
            sum2 += p[i] * p[i];
        }
        const double mu = sum / n;
        cs.mean[c] = mu;
        cs.stdev[c] = std::sqrt(std::max(0.0, sum2 / n - mu * mu));
    }
    return cs;
}

std::array<double, 8> spatial_gradients(const ColorStats& nucleus_stats,
                                        const ColorStats& zone_stats) {
    std::array<double, 8> g{};
    for (int c = 0; c < 4; ++c) {
        g[c] = nucleus_stats.mean[c] - zone_stats.mean[c];
        g[c + 4] = nucleus_stats.stdev[c] - zone_stats.stdev[c];
    }
    return g;
}

GlcmFeatures glcm_features(const Plane& gray, const BinaryMask& domain) {
    constexpr int kLevels = 32;
    const int W = gray.width, H = gray.height;

    double mn = 0.0, mx = 0.0;
    bool any = false;
    for (size_t i = 0; i < domain.bits.size(); ++i) {
        if (!domain.bits[i]) continue;
        if (!any) {
            mn = mx = gray.data[i];
            any = true;
        } else {
            mn = std::min(mn, gray.data[i]);
            mx = std::max(mx, gray.data[i]);
        }
    }
    GlcmFeatures out;
    if (!any) {
        out.degraded = true;
        return out;
    }

    std::vector<int> q(domain.bits.size(), -1);
    const double range = mx - mn;
    for (size_t i = 0; i < domain.bits.size(); ++i) {
        if (!domain.bits[i]) continue;
        q[i] = (range > 0.0)
                   ? std::min(kLevels - 1, static_cast<int>((gray.data[i] - mn) / range * kLevels))
                   : 0;
    }

    // angles 0/45/90/135 with y pointing down
    static constexpr int adx[4] = {1, 1, 0, -1};
    static constexpr int ady[4] = {0, -1, -1, -1};
    static constexpr int dists[2] = {1, 3};

    double sum_c = 0, sum_h = 0, sum_e = 0, sum_r = 0;
    int used = 0;
    std::vector<double> P(kLevels * kLevels);
    for (int dist : dists) {
        for (int ang = 0; ang < 4; ++ang) {
            std::fill(P.begin(), P.end(), 0.0);
            const int dx = adx[ang] * dist, dy = ady[ang] * dist;
            double pairs = 0.0;
            for (int y = 0; y < H; ++y) {
                for (int x = 0; x < W; ++x) {
                    const int i = q[static_cast<size_t>(y) * W + x];
                    if (i < 0) continue;
                    const int nx = x + dx, ny = y + dy;
                    if (nx < 0 || ny < 0 || nx >= W || ny >= H) continue;
                    const int j = q[static_cast<size_t>(ny) * W + nx];
                    if (j < 0) continue;
                    P[i * kLevels + j] += 1.0;
                    P[j * kLevels + i] += 1.0;  // symmetric
                    pairs += 2.0;
                }
            }
            if (pairs <= 0.0) continue;
            for (auto& p : P) p /= pairs;

            double contrast = 0, homog = 0, energy = 0;
            double mu_i = 0, mu_j = 0;
            for (int i = 0; i < kLevels; ++i)
                for (int j = 0; j < kLevels; ++j) {
                    const double p = P[i * kLevels + j];
                    contrast += p * (i - j) * (i - j);
                    homog += p / (1.0 + (i - j) * (i - j));
                    energy += p * p;
                    mu_i += i * p;
                    mu_j += j * p;
                }
            double var_i = 0, var_j = 0, cov = 0;
            for (int i = 0; i < kLevels; ++i)
                for (int j = 0; j < kLevels; ++j) {
                    const double p = P[i * kLevels + j];
                    var_i += p * (i - mu_i) * (i - mu_i);
                    var_j += p * (j - mu_j) * (j - mu_j);
                    cov += p * (i - mu_i) * (j - mu_j);
                }
            const double denom = std::sqrt(var_i * var_j);
            const double corr = (denom > 0.0) ? cov / denom : 0.0;

            sum_c += contrast;
            sum_h += homog;
            sum_e += energy;
            sum_r += corr;
            ++used;
        }
    }
    if (used == 0) {
        out.degraded = true;
        return out;
    }
    out.contrast = sum_c / used;
    out.homogeneity = sum_h / used;
    out.energy = sum_e / used;
    out.correlation = sum_r / used;
    return out;
}

LbpHistogram lbp_histogram(const Plane& gray, const BinaryMask& domain) {
    // east first, then counter-clockwise (y down => NE is (1,-1))
    static constexpr int ndx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    static constexpr int ndy[8] = {0, -1, -1, -1, 0, 1, 1, 1};

    const int W = gray.width, H = gray.height;
    std::array<double, 256> raw{};
    double count = 0.0;
    for (int y = 1; y < H - 1; ++y) {
        for (int x = 1; x < W - 1; ++x) {
            if (!domain.at(x, y)) continue;
            const double c = gray.at(x, y);
            int code = 0;
            for (int k = 0; k < 8; ++k)
                if (gray.at(x + ndx[k], y + ndy[k]) >= c) code |= (1 << k);
            raw[code] += 1.0;
            count += 1.0;
        }
    }
    LbpHistogram h;
    h.raw_count = count;
    if (count <= 0.0) {
        h.degraded = true;
        return h;
    }
    for (int g = 0; g < 32; ++g) {
        double s = 0.0;
        for (int b = 0; b < 8; ++b) s += raw[g * 8 + b];
        h.bins[g] = s / count;
    }
    return h;
}

FeatureVector build_vector(const PlanarImage& rgb, const zones::ZonalDecomposition& zones,
                           const FeatureSchema& schema) {
    if (rgb.colorspace != Colorspace::RGB8) throw InputError("build_vector: expects RGB8");
    if (schema.schema_id != default_schema().schema_id)
        throw InputError("build_vector: schema mismatch");

    const PlanarImage gray_img = img::convert(rgb, Colorspace::GRAY);
    const Plane& gray = gray_img.plane("gray");

    FeatureVector v;
    v.schema_id = schema.schema_id;
    v.values.reserve(schema.size());

    const MorphologyFeatures m = morphology_features(zones.nucleus, zones.cell);
    v.values.insert(v.values.end(),
                    {m.area, m.circularity, m.solidity, m.boundary_roughness, m.nc_ratio});

    const std::pair<const BinaryMask*, Domain> domains[4] = {
        {&zones.nucleus, Domain::nucleus},
        {&zones.proximal, Domain::proximal},
        {&zones.distal, Domain::distal},
        {&zones.cell, Domain::cell}};

    ColorStats nucleus_stats;
    std::array<ColorStats, 4> all_stats;
    for (int d = 0; d < 4; ++d) {
        const auto& [mask, dom] = domains[d];
        const ColorStats cs = color_stats(rgb, gray, *mask);
        const GlcmFeatures gf = glcm_features(gray, *mask);
        const LbpHistogram lh = lbp_histogram(gray, *mask);
        all_stats[d] = cs;
        if (dom == Domain::nucleus) nucleus_stats = cs;
        if (cs.degraded || gf.degraded || lh.degraded) v.degraded_domains.insert(dom);

        for (int c = 0; c < 4; ++c) v.values.push_back(cs.mean[c]);
        for (int c = 0; c < 4; ++c) v.values.push_back(cs.stdev[c]);
        v.values.insert(v.values.end(), {gf.contrast, gf.homogeneity, gf.energy, gf.correlation});
        for (double b : lh.bins) v.values.push_back(b);
    }

    // gradient blocks zero out when the zone itself was empty
    const std::pair<int, Domain> grads[2] = {{1, Domain::proximal}, {2, Domain::distal}};
    for (const auto& [idx, dom] : grads) {
        if (all_stats[idx].degraded) {
            for (int i = 0; i < 8; ++i) v.values.push_back(0.0);
        } else {
            const auto g = spatial_gradients(nucleus_stats, all_stats[idx]);
            v.values.insert(v.values.end(), g.begin(), g.end());
        }
    }

    if (v.values.size() != schema.size())
        throw InputError("build_vector: schema length mismatch");
    for (double x : v.values)
        if (!std::isfinite(x)) throw InputError("build_vector: non-finite feature value");
    return v;
}

}  // namespace prism::feat
