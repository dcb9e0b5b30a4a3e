#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace nashoverlap {

/// splitmix64 stream generator (Steele et al.). Fixed-width integer
/// arithmetic only, so every stream is reproducible across platforms,
/// compilers and thread counts.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Draw from [0, bound) via the multiply-shift reduction. The 2^-64
  /// bias is irrelevant here; branch-free keeps the stream cheap.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

/// Deterministic child seed for stream `index` of `master`. Used for
/// per-game seeds so results do not depend on scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 mix(master ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  return mix.next();
}

/// In-place Fisher-Yates. std::shuffle is implementation-defined, this
/// is not.
template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

inline std::vector<std::uint32_t> random_permutation(std::uint32_t n,
                                                     SplitMix64& rng) {
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  shuffle(order, rng);
  return order;
}

}  // namespace nashoverlap
