#pragma once

#include <cstdint>
#include <random>

namespace cocycle_lab::util {

// SplitMix64 finalizer; used to derive independent sub-seeds and hashed
// symbol streams.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return mix64(seed ^ mix64(stream + 0x5851f42d4c957f2dULL));
}

// Engine used by every sampler. The conversions below avoid the
// implementation-defined std distributions so that outputs do not depend on
// the standard library build.
using Engine = std::mt19937_64;

inline double uniform01(Engine& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_index(Engine& engine, std::uint64_t bound) {
    // Rejection keeps the draw exactly uniform.
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t r;
    do {
        r = engine();
    } while (r >= limit);
    return r % bound;
}

}  // namespace cocycle_lab::util
