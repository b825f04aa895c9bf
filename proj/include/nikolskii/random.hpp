#pragma once

#include <cstdint>
#include <random>

namespace nikolskii {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-task seed: the task index is mixed into the master seed so that
/// parallel tasks draw from independent, schedule-free streams.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t task) {
  return splitmix64(master ^ splitmix64(task + 0x632be59bd9b4e019ULL));
}

/// Standard normal variates from mt19937_64 via the Marsaglia polar method.
/// Uses only the engine's fully specified output, IEEE arithmetic, sqrt and log,
/// so a given seed reproduces the same stream wherever log is correctly rounded.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
  }

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace nikolskii
