#ifndef LEVYCHAIN_RNG_HPP
#define LEVYCHAIN_RNG_HPP

#include <cmath>
#include <cstdint>

namespace levychain {

// SplitMix64: counter-based generator (output n is a fixed bijective hash of
// seed + n*gamma). Independent streams are derived from (seed, stream), so
// per-member draws do not depend on scheduling order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t stream_id) {
    return SplitMix64(mix(seed + 0x9e3779b97f4a7c15ULL) ^
                      mix(stream_id * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL));
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // uniform in [0, 1), 53-bit resolution; platform independent
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // standard normal via Box-Muller (pair cached)
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Binomial(n, p) by direct Bernoulli summation; n here is O(100)
  int binomial(int n, double p) {
    int k = 0;
    for (int i = 0; i < n; ++i) k += (uniform() < p) ? 1 : 0;
    return k;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace levychain

#endif
