// Counter-based pseudo-random streams for reproducible (and parallel) sampling.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace advlin {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Weyl increment of SplitMix64.
inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Derives an independent stream key from a user seed and a stream index,
// so replicate i of a run seeded with s always sees the same draws no
// matter how work is scheduled across threads.
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed + kGolden * (stream + 1));
}

// Stateless-core generator: the i-th output is mix64(key + i*kGolden).
// The object only tracks the counter (and one cached normal deviate).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  static CounterRng stream(std::uint64_t seed, std::uint64_t stream_id) {
    return CounterRng(derive_stream(seed, stream_id));
  }

  std::uint64_t next_u64() { return mix64(key_ + kGolden * ++counter_); }

  // Uniform on (0, 1]: never returns 0, safe under log().
  double next_unit() {
    return 1.0 - static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool next_bool() { return (next_u64() >> 63) != 0; }

  // Standard normal via the trigonometric Box-Muller transform
  // (rejection-free: consumes exactly two uniforms per pair).
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace advlin
