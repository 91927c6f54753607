#pragma once

#include <cstdint>
#include <random>

namespace irl1 {

/// Deterministic random source for instance generation.
///
/// Engine: std::mt19937_64 (fully specified by the standard). Uniforms take
/// the top 53 bits of one draw; normals use the Box-Muller transform on two
/// uniforms, returning the cosine branch first and caching the sine branch.
/// Bounded integers use rejection on the raw 64-bit output. The standard
/// distributions are avoided because their algorithms are
/// implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal.
  double normal();

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

} // namespace irl1
