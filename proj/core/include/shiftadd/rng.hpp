#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

namespace shiftadd::rng {

/// splitmix64 finalizer; used to derive independent sub-seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t s0,
                                    std::uint64_t s1 = 0) {
  return splitmix64(splitmix64(splitmix64(base) ^ s0) ^ s1);
}

/// Uniform draw in [0, bound) by masked rejection. Unlike
/// std::uniform_int_distribution this is fully determined by the engine's
/// standard-specified output sequence, so results are portable.
inline std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const int bits = std::bit_width(bound - 1);
  const std::uint64_t mask = (bits >= 64) ? ~0ULL : ((1ULL << bits) - 1);
  for (;;) {
    const std::uint64_t v = eng() & mask;
    if (v < bound) return v;
  }
}

template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& eng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_below(eng, i));
    std::swap(items[i - 1], items[j]);
  }
}

/// k distinct values drawn uniformly from [0, population), in draw order.
inline std::vector<std::uint64_t> sample_distinct(std::mt19937_64& eng,
                                                  std::uint64_t population,
                                                  std::size_t k) {
  std::vector<std::uint64_t> out;
  out.reserve(k);
  while (out.size() < k && out.size() < population) {
    const std::uint64_t v = uniform_below(eng, population);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

}  // namespace shiftadd::rng
