#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace erpavg::rng {

// All randomness in the toolkit flows from one 64-bit seed through splitmix64
// (Steele et al. finalizer). Sub-streams are derived as a pure function of
// (seed, index), so concurrent consumers get identical draws regardless of
// scheduling, and every generated number is reproducible from the report
// header alone. Distributions are hand-rolled (53-bit uniforms, Box-Muller
// normals) instead of <random> so the byte streams are portable across
// standard libraries.

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += kGolden;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Order-independent child seed for stream `index` of `seed`.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed + (index + 1) * kGolden;
  return splitmix64_next(state);
}

// Stream tags keep unrelated consumers of the same experiment seed apart.
enum StreamTag : std::uint64_t {
  kStreamSynth = 0x53594e54ull,     // per-trial generation, offset by trial id
  kStreamSplit = 0x53504c54ull,     // halves split permutation
  kStreamKfold = 0x4b464f4cull,     // fold assignment permutation
  kStreamTrain = 0x5452414eull,     // classifier epoch shuffles, offset by pair
};

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  // Uniform on [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Unbiased integer on [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0ull - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - next_double();  // (0, 1]
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  double gaussian(double mean, double std_dev) { return mean + std_dev * gaussian(); }

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::uint64_t state_;
  bool have_spare_{false};
  double spare_{0.0};
};

}  // namespace erpavg::rng
