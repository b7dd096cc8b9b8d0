#pragma once

#include <cstdint>
#include <random>

namespace pvshare {

// All randomness in the project flows from one user-facing 64-bit seed.
// Independent consumers (load jitter, PV jitter, each optimizer restart)
// get their own stream id so they never share generator state.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream)));
}

// Seed for the k-th restart of a multi-seed optimizer run.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k) {
  return splitmix64(base ^ splitmix64(k));
}

namespace stream {
constexpr std::uint64_t kLoadJitter = 0x10ad;
constexpr std::uint64_t kPvJitter = 0x501a;
constexpr std::uint64_t kGradientDescent = 0x6d;
constexpr std::uint64_t kSimulatedAnnealing = 0x5a;
}  // namespace stream

}  // namespace pvshare
