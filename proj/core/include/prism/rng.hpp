#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace prism {

/// Derive an independent sub-seed from (global seed, purpose label) so that
/// adding one stochastic consumer never perturbs the streams of the others.
inline uint64_t sub_seed(uint64_t global_seed, std::string_view label) {
    uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : label) {
        h ^= static_cast<uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    uint64_t z = global_seed + 0x9e3779b97f4a7c15ULL + h;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;  // splitmix64 finalizer
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(uint64_t global_seed, std::string_view label) {
    return std::mt19937_64(sub_seed(global_seed, label));
}

}  // namespace prism
