#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dislo {

/// Deterministic uniform doubles on top of mt19937_64. The mapping from
/// raw 64-bit draws to doubles is pinned here (53-bit mantissa) instead of
/// relying on std::uniform_real_distribution, whose output is
/// implementation-defined; reruns must be bit-identical.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return std::ldexp(static_cast<double>(engine_() >> 11), -53); }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dislo
