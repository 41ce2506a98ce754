#pragma once

#include <cstdint>
#include <numbers>

namespace qwalk {

// SplitMix64 (Steele, Lea, Flood 2014).  Counter-based: output k of the
// stream seeded with s is finalize(s + (k+1)*gamma), which makes per-trial
// seeding order-independent.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  constexpr result_type operator()() noexcept {
    std::uint64_t z = (state_ += kGamma);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

 private:
  std::uint64_t state_;
};

inline constexpr const char* kRngName = "splitmix64";

// Seed for trial k of an ensemble: the k-th output of the master stream.
// Fixed mapping, so parallel scheduling cannot change any trial's draw.
inline constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) noexcept {
  SplitMix64 g(master_seed + trial * SplitMix64::kGamma);
  return g();
}

// Uniform draw from [0, 2*pi), using the top 53 bits so the mapping is exact
// and identical on every platform.
template <class Rng>
double uniform_angle(Rng& rng) {
  const double unit = static_cast<double>(static_cast<std::uint64_t>(rng()) >> 11) * 0x1.0p-53;
  return 2.0 * std::numbers::pi * unit;
}

}  // namespace qwalk
