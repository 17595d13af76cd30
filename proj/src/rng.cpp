// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include "edlab/rng.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace edlab
{

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : engine(splitmix64(seed)) {}

double Rng::uniform()
{
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi)
{
  return lo + (hi - lo) * uniform();
}

std::uint64_t Rng::below(std::uint64_t n)
{
  if (n == 0)
  {
    throw std::invalid_argument("Rng::below requires n > 0");
  }
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do
  {
    x = engine();
  } while (x >= limit);
  return x % n;
}

std::vector<int> Rng::sample_without_replacement(int n, int count)
{
  if (count < 0 || count > n)
  {
    throw std::invalid_argument("sample size must lie in [0, n]");
  }
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < count; ++i)
  {
    const int j = i + static_cast<int>(below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace edlab
