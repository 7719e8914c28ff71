#pragma once

#include <cstdint>
#include <random>

namespace gabc {

// splitmix64 step; used to derive independent substreams from one root seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic substream seed from (root, tags). Batch sampling and
// augmentation draw from rngs keyed by (seed, epoch, iteration), so the
// delivered bundle sequence is a pure function of the seed and resuming at an
// epoch boundary replays the identical stream.
inline std::uint64_t mix_seed(std::uint64_t root, std::uint64_t a,
                              std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = root;
  s = splitmix64(s) ^ a;
  s = splitmix64(s) ^ b;
  s = splitmix64(s) ^ c;
  return splitmix64(s);
}

inline std::mt19937_64 make_rng(std::uint64_t root, std::uint64_t a,
                                std::uint64_t b = 0, std::uint64_t c = 0) {
  return std::mt19937_64(mix_seed(root, a, b, c));
}

}  // namespace gabc
