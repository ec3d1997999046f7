#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace semirad {

// SplitMix64 (Steele, Lea, Flood 2014).  Chosen over std:: engines because
// its output is pinned by the algorithm, not by the standard library
// implementation, so campaign replays are bit-stable across toolchains.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53-bit mantissa
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller; consumes two uniforms per pair
  std::complex<double> gaussian_pair() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

  double gaussian() { return gaussian_pair().real(); }

  // complex standard normal: independent N(0,1) real and imaginary parts
  std::complex<double> complex_gaussian() { return gaussian_pair(); }

 private:
  std::uint64_t state_;
};

// Derive an independent stream for a path of indices, e.g.
// (campaign seed, cell, trial, slot).  Each hop runs the state through one
// SplitMix64 step so nearby paths decorrelate.
inline std::uint64_t derive_stream(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = seed;
  for (std::uint64_t p : path) {
    SplitMix64 g(s ^ (p * 0xD1B54A32D192ED03ULL + 0x9E3779B97F4A7C15ULL));
    s = g.next();
  }
  return s;
}

inline constexpr const char* kRngName = "splitmix64+box-muller";

}  // namespace semirad
