#pragma once

#include <cstdint>

namespace rt {

// Counter-based stream: every draw is a pure function of (key, counter), so
// particle substreams are reproducible regardless of how work is scheduled.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t step, std::uint64_t source_class,
            std::uint64_t particle_index) {
    key_ = mix(mix(mix(mix(seed) ^ step) ^ (source_class * 0x9E3779B97F4A7C15ull)) ^
               particle_index);
  }

  // Uniform in [0, 1).
  double u() {
    const std::uint64_t z = mix(key_ + (++ctr_) * 0x9E3779B97F4A7C15ull);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

}  // namespace rt
