// Seedable, splittable random number streams.
//
// Every randomized operation in the library derives its draws from a master
// seed plus a small tuple of stream indices (trial number, pair index,
// receiver index, purpose tag). Streams are cheap value types, so trial t
// can be simulated on any thread and still produce identical numbers: the
// draw sequence depends only on the derived key, never on scheduling order.

#pragma once

#include <cstdint>
#include <cmath>

namespace dosnet {

// splitmix64 finalizer; also used as the per-step output function below.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Collapses a (seed, a, b, c) tuple into one well-mixed 64-bit key.
constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a = 0,
                                   std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t k = mix64(seed);
  k = mix64(k ^ mix64(a ^ 0x7c3a9d5b10215e4fULL));
  k = mix64(k ^ mix64(b ^ 0x2d54cf8b93ac11d7ULL));
  k = mix64(k ^ mix64(c ^ 0x61c8864680b583ebULL));
  return k;
}

// splitmix64 sequence seeded at a derived key. Not cryptographic; plenty for
// Monte Carlo use.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : state_(key) {}

  static RngStream from(std::uint64_t seed, std::uint64_t a = 0,
                        std::uint64_t b = 0, std::uint64_t c = 0) {
    return RngStream(derive_key(seed, a, b, c));
  }

  std::uint64_t next_u64() { return mix64(state_ += 0x9e3779b97f4a7c15ULL); }

  // Uniform on (0,1]; never returns 0, so -log(u) is always finite.
  double uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unit-mean exponential.
  double exponential() { return -std::log(uniform()); }

  // Exact Poisson sample. Knuth multiplication, splitting large means into
  // chunks so the running product never underflows.
  std::uint64_t poisson(double mean) {
    std::uint64_t n = 0;
    while (mean > 0) {
      const double chunk = mean > 40.0 ? 40.0 : mean;
      mean -= chunk;
      const double limit = std::exp(-chunk);
      double prod = uniform();
      while (prod > limit) {
        ++n;
        prod *= uniform();
      }
    }
    return n;
  }

 private:
  std::uint64_t state_;
};

// One unit-mean exponential fade for the directed link (tx -> rx) of a given
// trial. Stateless: the same key always yields the same fade, which is what
// ties a transmitter's scheduling fade to the interference fade its signal
// produces at the same receiver.
inline double edge_fade(std::uint64_t seed, std::uint64_t trial,
                        std::uint64_t tx_index, std::uint64_t rx_index) {
  const std::uint64_t k =
      derive_key(seed, 0xFADEull, trial, (tx_index << 24) ^ rx_index ^ (tx_index << 44));
  const double u = static_cast<double>((mix64(k) >> 11) + 1) * 0x1.0p-53;
  return -std::log(u);
}

}  // namespace dosnet
