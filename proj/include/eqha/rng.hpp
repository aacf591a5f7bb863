#pragma once

#include <cstdint>
#include <string_view>

namespace eqha {

// splitmix64: tiny, deterministic, identical on every platform. The std
// engines are fine but std distributions are not pinned by the standard, so
// everything random in this library goes through these helpers.
struct Rng {
  uint64_t s;

  explicit Rng(uint64_t seed) : s(seed) {}

  uint64_t next() {
    uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // inclusive on both ends
  long uniform(long lo, long hi) {
    return lo + long(next() % uint64_t(hi - lo + 1));
  }

  bool chance(int num, int den) { return uniform(0, den - 1) < num; }
};

// Stable per-check seed: mixes a master seed with a textual key so result
// values do not depend on the order checks are run in.
inline uint64_t mix_seed(uint64_t master, std::string_view key) {
  uint64_t h = 0xcbf29ce484222325ULL ^ master;
  for (char c : key) {
    h ^= uint64_t(uint8_t(c));
    h *= 0x100000001b3ULL;
  }
  Rng r(h);
  return r.next();
}

}  // namespace eqha
