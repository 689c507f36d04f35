#ifndef MTCHAN_SEEDING_HPP_
#define MTCHAN_SEEDING_HPP_

#include <cstdint>

namespace mtchan {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for stream `index` under `master`. Parallel work units draw from
/// derive_seed(master, unit) so results do not depend on scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

}  // namespace mtchan

#endif  // MTCHAN_SEEDING_HPP_
