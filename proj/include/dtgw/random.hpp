#pragma once

#include <cstdint>

namespace dtgw {

// splitmix64: the counter-based generator used for every randomized piece of
// this repo (perturbations, generated test instances). The output sequence is
// a pure function of the seed, so runs reproduce across platforms/compilers.
// Reference: Steele, Lea, Flood, "Fast splittable pseudorandom number
// generators" (the java.util.SplittableRandom mixer).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53-bit resolution
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in (0, 1]; handy for inverse-transform sampling
  double next_open_double() { return 1.0 - next_double(); }

  // uniform integer in [0, n); n must be positive
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  bool next_bool() { return (next() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace dtgw
