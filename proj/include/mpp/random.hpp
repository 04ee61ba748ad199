#pragma once

#include <cstdint>
#include <random>

namespace mpp {

/// Seeded generator for the verification harnesses and sampling searches.
/// Draws are produced by explicit mantissa scaling rather than
/// std::uniform_real_distribution so that a seed reproduces the same stream
/// on every platform.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + unit() * (hi - lo); }

  /// Derives an independent stream; useful for giving sub-tasks their own seed.
  std::uint64_t fork() { return engine_() ^ 0x9e3779b97f4a7c15ull; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mpp
