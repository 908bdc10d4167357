#pragma once

#include "normforge/rational.hpp"

#include <cstdint>
#include <random>

namespace normforge {

/// Seeded generator whose output is identical on every platform: only the
/// raw 64-bit engine output is used, never the standard distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// p/q with |p| <= num_bound and 1 <= q <= den_bound.
  Rat rational(std::int64_t num_bound, std::int64_t den_bound);
  /// As rational(), but nonnegative.
  Rat nonnegative(std::int64_t num_bound, std::int64_t den_bound);
  RatVec vector(Index n, std::int64_t num_bound = 9, std::int64_t den_bound = 8);
  /// Random vector that is not zero.
  RatVec nonzero_vector(Index n, std::int64_t num_bound = 9, std::int64_t den_bound = 8);

 private:
  std::mt19937_64 engine_;
};

}  // namespace normforge
