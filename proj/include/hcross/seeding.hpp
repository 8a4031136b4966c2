#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace hcross {

// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for an independent sub-task (trial, restart, ...) of a seeded run.
// Depends only on the base seed and the task coordinates, so any schedule
// of the sub-tasks reproduces the same streams.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t base,
                                                  std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t h = mix64(base);
    for (auto p : path) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
    return h;
}

using Rng = std::mt19937_64;

}  // namespace hcross
