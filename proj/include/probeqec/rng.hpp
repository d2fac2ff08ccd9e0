#pragma once

#include <cstdint>
#include <random>

namespace probeqec {

// All randomness in the library flows through an explicitly passed generator.
// Nothing reads global RNG state, so a (seed, trial) pair fully determines a
// trajectory.
using Rng = std::mt19937_64;

// SplitMix64 finalizer; good avalanche, used to decorrelate trial streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Independent per-trial stream: trial i of a run with the same seed always
// sees the same draws, regardless of execution order or thread count.
inline Rng make_trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x51ed270b7a4fd1ull)));
}

}  // namespace probeqec
