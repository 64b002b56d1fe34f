#pragma once

#include <cstdint>
#include <random>

namespace gesbn {

/// Seed plus stream id. Distinct streams of one seed give independent generators.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Mersenne Twister seeded from the mixed (seed, stream) pair.
using Engine = std::mt19937_64;
Engine make_engine(RngSeed s);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Engine& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

}  // namespace gesbn
