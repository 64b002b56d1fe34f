#include "gesbn/rng.hpp"

namespace gesbn {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Engine make_engine(RngSeed s) { return Engine(splitmix64(s.seed ^ splitmix64(s.stream + 0x632be59bd9b4e019ULL))); }

}  // namespace gesbn
