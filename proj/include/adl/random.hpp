#ifndef ADL_RANDOM_HPP
#define ADL_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>

namespace adl {

// Seeded generator with platform-independent derived draws.  The standard
// distribution classes are implementation-defined, so uniform doubles and
// bounded integers are derived from the raw 64-bit engine output here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform in [0, n); n > 0.
  std::size_t index(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return static_cast<std::size_t>(x % bound);
  }

  // Independent stream for the i-th unit of work under a master seed.
  static Rng stream(std::uint64_t seed, std::uint64_t i) {
    return Rng(splitmix64(seed ^ splitmix64(i + 0x9e3779b97f4a7c15ULL)));
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace adl

#endif  // ADL_RANDOM_HPP
