#pragma once

#include <cstdint>
#include <random>

namespace kmem {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Child seed for stream `index` of a parent seed. Streams are independent of
// evaluation order, so parallel and serial runs draw identical numbers.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed + 0x9e3779b97f4a7c15ULL) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

// Uniform on (0, 1]; safe to pass to log().
inline double uniform_open_zero(Rng& rng) { return 1.0 - std::generate_canonical<double, 64>(rng); }

}  // namespace kmem
