#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace aisnav {

uint64_t splitmix64(uint64_t x);

// Derive an independent stream seed from a base seed. Labels give named
// streams (one per trial, per subsystem) so runs reproduce exactly.
uint64_t derive_seed(uint64_t base, uint64_t stream);
uint64_t derive_seed(uint64_t base, std::string_view label);

// Deterministic random source. Draws are hand-rolled on top of
// mt19937_64 so sequences reproduce bit-for-bit everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed = 1) : gen_(splitmix64(seed ^ 0x6a09e667f3bcc909ull)) {}

  uint64_t next_u64() { return gen_(); }

  // [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive bounds
  int uniform_int(int lo, int hi);

  bool bernoulli(double p) { return uniform() < p; }

  double gaussian(double mean, double sd);

  // Child stream; advances this stream by one draw.
  Rng split() { return Rng(splitmix64(next_u64())); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace aisnav
