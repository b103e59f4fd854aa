#pragma once

#include <cstdint>

namespace z2flux {

// SplitMix64: 64-bit seeded generator with cheap stream splitting.
// All randomized runs record their seed, so results are reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Independent stream derived from this seed and a stream id.
  SplitMix64 split(std::uint64_t stream) const {
    SplitMix64 mix(state_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    mix.next();
    return mix;
  }

  // uniform in [0,1)
  double uniform() { return (next() >> 11) * 0x1.0p-53; }

  // fair +/-1
  int sign() { return (next() & 1) ? 1 : -1; }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace z2flux
