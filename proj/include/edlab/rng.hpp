// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace edlab
{

/// One step of the splitmix64 sequence, used to spread user seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Reproducible generator. The same seed gives the same stream on every
/// platform because only the raw 64-bit output of mt19937_64 is consumed.
class Rng
{
public:
  explicit Rng(std::uint64_t seed);

  /// Uniform double in [0, 1) built from the top 53 bits.
  double uniform();
  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n), unbiased (rejection sampling).
  std::uint64_t below(std::uint64_t n);

  /// count distinct indices from [0, n) in draw order (partial Fisher-Yates).
  std::vector<int> sample_without_replacement(int n, int count);

private:
  std::mt19937_64 engine;
};

}  // namespace edlab
