#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace apfmapf {

// Every stochastic choice in the suite draws from a stream derived from one
// master seed plus a component name (and optional indices), so that runs are
// reproducible and independent components do not share draw sequences.
inline uint64_t mix_seed(uint64_t seed, std::string_view name, uint64_t a = 0,
                         uint64_t b = 0) {
  uint64_t h = 1469598103934665603ULL ^ seed;
  auto step = [&h](uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (i * 8)) & 0xFF;
      h *= 1099511628211ULL;
    }
  };
  for (char c : name) {
    h ^= static_cast<uint8_t>(c);
    h *= 1099511628211ULL;
  }
  step(a);
  step(b);
  return h;
}

inline std::mt19937_64 make_rng(uint64_t seed, std::string_view name,
                                uint64_t a = 0, uint64_t b = 0) {
  return std::mt19937_64(mix_seed(seed, name, a, b));
}

}  // namespace apfmapf
