#pragma once

#include <cstdint>
#include <random>

// Seed for randomized property tests; set with --seed=N, fixed by default.
std::uint64_t test_seed();

inline std::mt19937_64 seeded_rng(std::uint64_t salt = 0)
{
    return std::mt19937_64(test_seed() ^ (salt * 0x9e3779b97f4a7c15ULL));
}
