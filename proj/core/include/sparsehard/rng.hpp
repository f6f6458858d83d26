#pragma once

#include <cstdint>
#include <random>

namespace sparsehard {

// Seedable, splittable generator. Every consumer derives an independent
// substream from (seed, index), so results never depend on the order in
// which trials or sets are processed.
//
// Engine: std::mt19937_64 seeded with splitmix64(seed) ^ splitmix64(index').
// Uniforms: (next() >> 11) * 2^-53, in [0, 1).
// Normals: Box-Muller on (u1, u2) with u1 replaced by 1 - u1 so it lies in
// (0, 1]; z0 = sqrt(-2 ln u1) cos(2 pi u2), z1 = sqrt(-2 ln u1) sin(2 pi u2).
// z0 is returned first, z1 is cached for the next call.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  static Rng Substream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  double uniform01();
  bool coin() { return (next() >> 63) != 0; }
  double normal();
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace sparsehard
