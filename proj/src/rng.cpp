#include "aisnav/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace aisnav {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

uint64_t derive_seed(uint64_t base, uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream + 0x51ed270b7a4aa31dull));
}

uint64_t derive_seed(uint64_t base, std::string_view label) {
  // FNV-1a over the label, finalized through splitmix.
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return splitmix64(base ^ splitmix64(h));
}

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: hi < lo");
  auto n = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
  // multiply-shift bounded draw
  auto v = static_cast<uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  return lo + static_cast<int>(v);
}

double Rng::gaussian(double mean, double sd) {
  if (have_spare_) {
    have_spare_ = false;
    return mean + sd * spare_;
  }
  double u, v, s;
  do {
    u = uniform(-1.0, 1.0);
    v = uniform(-1.0, 1.0);
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  have_spare_ = true;
  return mean + sd * u * factor;
}

}  // namespace aisnav
