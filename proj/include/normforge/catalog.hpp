#pragma once

#include "normforge/normed_space.hpp"
#include "normforge/polytope.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace normforge {

/// Cantor diagonal enumeration of N x N: pi(1) = (1,1), pi(2) = (1,2),
/// pi(3) = (2,1), pi(4) = (1,3), ...
std::pair<std::int64_t, std::int64_t> pi(std::int64_t i);
std::int64_t pi_inverse(std::int64_t n, std::int64_t k);

/// Enumeration of nonempty finite sequences of positive integers by weight
/// |eta| + sum(eta), lexicographically within a weight. Parents precede
/// children.
std::vector<int> varpi(std::int64_t i);
std::int64_t varpi_inverse(const std::vector<int>& eta);
/// (varpi^-1((p1)), varpi^-1((p1,p2)), ...).
std::vector<std::int64_t> delta(const std::vector<int>& prefix);

/// Encoding size of a canonical ball: total bits of all coordinates of its
/// generators.
std::size_t encoding_size(const PolytopeBall& ball);

/// The l-th monotone rational norm on R^d (l >= 1). Norms are ordered by
/// encoding size and then lexicographically by generator list; every norm
/// appears exactly once.
PolytopeBall rational_norm(Index d, std::size_t l);

/// Scans the first `budget` entries of the dimension-d enumeration, never
/// enumerating balls of encoding size above `max_size` (0: no limit), and
/// returns the first index whose ball satisfies `accept`.
template <typename Pred>
std::optional<std::size_t> scan_catalog(Index d, std::size_t budget, std::size_t max_size, Pred&& accept);

/// Z_eta: Z_(j) is rational_norm(1, j); Z_(eta, j) is the j-th monotone
/// rational norm on R^{|eta|+1} whose |eta|-dimensional section is Z_eta.
PolytopeBall catalog_ball(const std::vector<int>& eta);
BasisSpace catalog_space(const std::vector<int>& eta);

/// Child index j with Z_(eta, j) equal to the given extension, scanning at
/// most `budget` children. The extension must be monotone and extend Z_eta.
std::optional<std::size_t> find_child_index(const std::vector<int>& eta, const PolytopeBall& extension,
                                             std::size_t budget);

/// Number of entries currently memoized for dimension d.
std::size_t catalog_cached(Index d);

namespace detail {
const PolytopeBall& catalog_entry(Index d, std::size_t l);
const PolytopeBall* catalog_entry_bounded(Index d, std::size_t l, std::size_t max_size);
}

template <typename Pred>
std::optional<std::size_t> scan_catalog(Index d, std::size_t budget, std::size_t max_size, Pred&& accept) {
  for (std::size_t l = 1; l <= budget; ++l) {
    const PolytopeBall* b = detail::catalog_entry_bounded(d, l, max_size);
    if (!b) return std::nullopt;
    if (accept(*b)) return l;
  }
  return std::nullopt;
}

}  // namespace normforge
