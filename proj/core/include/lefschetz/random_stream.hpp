#pragma once

#include <cstdint>
#include <random>

namespace lefschetz {

// Seeded source for every random draw in the library. mt19937_64 is fully
// specified by the standard, so a (seed, draw index) pair names a value on
// every platform. Distributions from <random> are avoided for that reason.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  std::uint64_t next_u64() {
    ++draws_;
    return engine_();
  }

  // Uniform in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

  // Independent stream for retry number `attempt`, derived from the base seed.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t attempt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (attempt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

}  // namespace lefschetz
