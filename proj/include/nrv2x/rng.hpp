#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace nrv2x {

// Random stream with self-contained draw algorithms on top of mt19937_64,
// so sequences are reproducible across standard libraries (the std::
// distributions are implementation-defined).
class RngStream {
 public:
  explicit RngStream(uint64_t seed) : engine_(seed) {}

  // uniform in [0, 1), 53-bit resolution
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n)
  int uniform_int(int n) {
    return static_cast<int>(static_cast<double>(n) * uniform());
  }

  // Box-Muller; one normal per two uniform draws
  double normal(double mean = 0.0, double stddev = 1.0) {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * M_PI * u2);
  }

  double exponential(double mean = 1.0) {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    return -mean * std::log(u);
  }

  // Circularly-symmetric complex normal CN(0, variance): amplitude from the
  // exponential law, phase uniform.
  std::complex<double> complex_normal(double variance = 1.0) {
    const double mag = std::sqrt(exponential(variance));
    const double phase = 2.0 * M_PI * uniform();
    return {mag * std::cos(phase), mag * std::sin(phase)};
  }

  // Count of unit-rate exponential arrivals within [0, mean); equivalent to
  // Knuth's product method but stable for large means.
  int poisson(double mean) {
    if (mean <= 0.0) return 0;
    double acc = 0.0;
    int k = -1;
    do {
      acc += exponential(1.0);
      ++k;
    } while (acc <= mean);
    return k;
  }

  uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

namespace detail {
inline uint64_t fnv1a64(std::string_view s, uint64_t h) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline uint64_t mix64(uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}
}  // namespace detail

// Deterministic, independent stream per (base_seed, run, label). Same inputs
// always produce the same sequence; any differing input decorrelates it.
inline RngStream derived_rng(uint64_t base_seed, uint64_t run_index, std::string_view stream) {
  uint64_t h = 0xcbf29ce484222325ull;
  h = detail::fnv1a64(stream, h);
  h ^= detail::mix64(base_seed);
  h = detail::mix64(h + 0x632be59bd9b4e019ull * (run_index + 1));
  return RngStream(h);
}

}  // namespace nrv2x
