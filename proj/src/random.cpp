#include "normforge/random.hpp"

namespace normforge {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error("Rng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t r;
  do {
    r = next();
  } while (r >= limit);
  return lo + static_cast<std::int64_t>(r % span);
}

Rat Rng::rational(std::int64_t num_bound, std::int64_t den_bound) {
  std::int64_t p = uniform(-num_bound, num_bound);
  std::int64_t q = uniform(1, den_bound);
  return Rat(p) / q;
}

Rat Rng::nonnegative(std::int64_t num_bound, std::int64_t den_bound) {
  std::int64_t p = uniform(0, num_bound);
  std::int64_t q = uniform(1, den_bound);
  return Rat(p) / q;
}

RatVec Rng::vector(Index n, std::int64_t num_bound, std::int64_t den_bound) {
  RatVec v(n);
  for (Index i = 0; i < n; ++i) v(i) = rational(num_bound, den_bound);
  return v;
}

RatVec Rng::nonzero_vector(Index n, std::int64_t num_bound, std::int64_t den_bound) {
  for (;;) {
    RatVec v = vector(n, num_bound, den_bound);
    if (!is_zero(v)) return v;
  }
}

}  // namespace normforge
