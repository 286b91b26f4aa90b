#include "prism/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "prism/rng.hpp"

namespace prism::synth {

namespace {

constexpr double kTau = 6.283185307179586;

struct Wobble {
    // r(theta) = base * (1 + sum a_k cos(k theta + phi_k)), k = 2..4
    double base = 0.0;
    double amp[3] = {0, 0, 0};
    double phase[3] = {0, 0, 0};

    double radius(double theta) const {
        double r = 1.0;
        for (int k = 0; k < 3; ++k) r += amp[k] * std::cos((k + 2) * theta + phase[k]);
        return base * r;
    }
};

Wobble make_wobble(double base, double max_amp, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> amp(0.0, max_amp);
    std::uniform_real_distribution<double> ph(0.0, kTau);
    Wobble w;
    w.base = base;
    for (int k = 0; k < 3; ++k) {
        w.amp[k] = amp(rng);
        w.phase[k] = ph(rng);
    }
    return w;
}

struct Blob {
    double x = 0, y = 0, r = 1, amp = 0;
};

double smoothstep(double edge0, double edge1, double x) {
    const double t = std::clamp((x - edge0) / (edge1 - edge0), 0.0, 1.0);
    return t * t * (3.0 - 2.0 * t);
}

}  // namespace

SynthSample synth_cell(uint64_t seed, int label, int size) {
    auto rng = make_rng(seed, "synth/" + std::to_string(label));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double cx = size / 2.0 + (unit(rng) - 0.5) * size * 0.09;
    const double cy = size / 2.0 + (unit(rng) - 0.5) * size * 0.09;
    const double cell_r = size * (0.215 + unit(rng) * 0.08);
    const double nfrac = (label == 1) ? 0.62 + unit(rng) * 0.10 : 0.38 + unit(rng) * 0.10;
    const double nucleus_r = cell_r * nfrac;
    const double nx = cx + (unit(rng) - 0.5) * cell_r * 0.18;
    const double ny = cy + (unit(rng) - 0.5) * cell_r * 0.18;

    const Wobble cell_w = make_wobble(cell_r, 0.05, rng);
    const Wobble nuc_w = make_wobble(nucleus_r, label == 1 ? 0.07 : 0.04, rng);

    // chromatin blotches: few and coarse for blasts, many and fine otherwise
    const int n_blobs = (label == 1) ? 6 : 18;
    const double blob_r_lo = (label == 1) ? 0.20 : 0.06;
    const double blob_r_hi = (label == 1) ? 0.40 : 0.14;
    const double blob_amp = (label == 1) ? 0.22 : 0.12;
    std::vector<Blob> blobs;
    for (int i = 0; i < n_blobs; ++i) {
        Blob b;
        const double ang = unit(rng) * kTau;
        const double rad = std::sqrt(unit(rng)) * nucleus_r * 0.85;
        b.x = nx + rad * std::cos(ang);
        b.y = ny + rad * std::sin(ang);
        b.r = nucleus_r * (blob_r_lo + unit(rng) * (blob_r_hi - blob_r_lo));
        b.amp = (unit(rng) < 0.5 ? -1.0 : 1.0) * blob_amp * (0.6 + 0.4 * unit(rng));
        blobs.push_back(b);
    }

    const double grad_strength = (label == 1) ? 0.55 : 0.20;
    const double grad_tau = cell_r * 0.35;  // decay length of the perinuclear tint

    const double bg[3] = {236, 226, 219};       // pale smear background
    const double cyto[3] = {216, 209, 222};     // faint lavender cytoplasm
    const double peri[3] = {178, 188, 232};     // bluish perinuclear tint
    const double nuc[3] = {96, 72, 162};        // basophilic nucleus

    SynthSample s;
    s.label = label;
    s.image = PlanarImage(size, size, Colorspace::RGB8);
    s.image.add_plane(Plane("R", size, size));
    s.image.add_plane(Plane("G", size, size));
    s.image.add_plane(Plane("B", size, size));
    s.nucleus = BinaryMask(size, size);

    std::normal_distribution<double> noise(0.0, 1.5);
    Plane& R = s.image.plane("R");
    Plane& G = s.image.plane("G");
    Plane& B = s.image.plane("B");

    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double dcx = x - cx, dcy = y - cy;
            const double rc = std::hypot(dcx, dcy);
            const double cell_edge = cell_w.radius(std::atan2(dcy, dcx));
            const double dnx = x - nx, dny = y - ny;
            const double rn = std::hypot(dnx, dny);
            const double nuc_edge = nuc_w.radius(std::atan2(dny, dnx));

            double px[3];
            const double in_cell = 1.0 - smoothstep(cell_edge - 1.5, cell_edge + 1.5, rc);
            const double in_nuc = 1.0 - smoothstep(nuc_edge - 1.2, nuc_edge + 1.2, rn);

            // cytoplasm with a chroma tint decaying away from the nucleus rim
            const double tint =
                grad_strength * std::exp(-std::max(0.0, rn - nuc_edge) / grad_tau);
            for (int c = 0; c < 3; ++c)
                px[c] = cyto[c] + tint * (peri[c] - cyto[c]);

            // chromatin: luminance blotches inside the nucleus
            double chroma_mul = 1.0;
            for (const auto& b : blobs) {
                const double d2 = (x - b.x) * (x - b.x) + (y - b.y) * (y - b.y);
                chroma_mul += b.amp * std::exp(-d2 / (2.0 * b.r * b.r));
            }
            chroma_mul = std::clamp(chroma_mul, 0.78, 1.22);
            for (int c = 0; c < 3; ++c) {
                const double nv = nuc[c] * chroma_mul;
                px[c] = px[c] * (1.0 - in_nuc) + nv * in_nuc;
                px[c] = bg[c] * (1.0 - in_cell) + px[c] * in_cell;
            }

            R.at(x, y) = std::clamp(px[0] + noise(rng), 0.0, 255.0);
            G.at(x, y) = std::clamp(px[1] + noise(rng), 0.0, 255.0);
            B.at(x, y) = std::clamp(px[2] + noise(rng), 0.0, 255.0);
            if (rn <= nuc_edge) s.nucleus.set(x, y, true);
        }
    }
    return s;
}

std::vector<SynthSample> synth_corpus(int n, uint64_t seed, int size) {
    std::vector<SynthSample> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const int label = (i % 2 == 0) ? 1 : 0;
        SynthSample s = synth_cell(sub_seed(seed, "corpus/" + std::to_string(i)), label, size);
        s.id = "synth_" + std::to_string(i) + "_" + std::to_string(label);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace prism::synth
