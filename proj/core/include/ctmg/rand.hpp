//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CTMG_RAND_HPP
#define CTMG_RAND_HPP

#include <cstdint>
#include <random>

namespace ctmg {

/// Deterministic uniform generator: std::mt19937_64 with the top 53 bits of
/// each draw mapped to [0, 1). The engine is fully specified by the C++
/// standard, so a fixed seed reproduces the same stream on every platform.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// One round of splitmix64; used to derive independent stream seeds from a
/// master seed without correlating the streams.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace ctmg

#endif  // CTMG_RAND_HPP
