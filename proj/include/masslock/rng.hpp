#pragma once
// Counter-based deterministic RNG (splitmix64 in counter mode) and the
// normal CDF pair used for inverse-CDF Gaussian sampling.
//
// Output k of a stream is a pure function of (seed, k), so any language can
// reproduce a sample from its generator config alone. Reference outputs for
// seed 0 are committed in data/rng_reference.json and pinned by tests.

#include <cstdint>

namespace masslock {

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

// k-th raw output of the stream identified by seed.
std::uint64_t rng_value(std::uint64_t seed, std::uint64_t counter);

// Stream-split rule: derived seed for sub-stream `index`.
std::uint64_t rng_split(std::uint64_t seed, std::uint64_t index);

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() { return rng_value(seed_, counter_++); }
  double next_unit();    // uniform on [0,1), 53-bit mantissa
  double next_normal();  // standard normal via inverse CDF

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

double normal_cdf(double x);
// AS241 (PPND16) with one Newton polish step; |error| < 1e-13 on (0,1).
double inverse_normal_cdf(double p);

}  // namespace masslock
