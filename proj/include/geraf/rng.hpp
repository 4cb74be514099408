#pragma once

#include <cstdint>
#include <random>

namespace geraf {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; spreads nearby integers across the 64-bit space.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for one independent stream (e.g. tree i) of a master seed, so that
/// per-tree randomness does not depend on build scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    return mix64(master ^ mix64(stream));
}

} // namespace geraf
