#pragma once

#include "normforge/body.hpp"
#include "normforge/rational.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace normforge {

/// Symmetric polytope co{+-g} spanning R^d. The representation is canonical:
/// the extreme points, each with a positive first nonzero coordinate, sorted
/// lexicographically. Two balls are equal as sets iff their generator lists
/// are equal.
class PolytopeBall {
 public:
  /// Throws Error("not a norm ...") when the generators do not span.
  explicit PolytopeBall(const std::vector<RatVec>& generators);

  Index dim() const { return dim_; }
  const std::vector<RatVec>& generators() const { return generators_; }
  const BodyPtr& body() const { return body_; }

  Rat gauge(const RatVec& x) const;
  bool contains(const RatVec& x) const { return gauge(x) <= 1; }

  /// Facet normals a (up to sign) with max over the ball of a . p equal to 1.
  std::vector<RatVec> facets() const;

  /// Image under the coordinate projection onto the first k coordinates.
  PolytopeBall projection(Index k) const;
  /// ball n (R^k x {0}), as a ball in R^k.
  PolytopeBall section(Index k) const;

  bool operator==(const PolytopeBall& other) const;

 private:
  Index dim_ = 0;
  std::vector<RatVec> generators_;
  BodyPtr body_;
};

/// s*a + t*b.
PolytopeBall minkowski_sum(const PolytopeBall& a, const PolytopeBall& b, const Rat& s, const Rat& t);

/// Extreme points of a symmetric point set, canonical and sorted. Returns
/// nullopt when the points do not span R^dim.
std::optional<std::vector<RatVec>> extreme_points(const std::vector<RatVec>& points, Index dim);

/// Vertices (up to sign) of {z in R^k : |a . z| <= 1 for every normal a}.
std::vector<RatVec> vertices_from_halfspaces(const std::vector<RatVec>& normals, Index k);

/// The ell-infinity cube and the ell-1 diamond in R^d.
PolytopeBall cube(Index d);
PolytopeBall cross_polytope(Index d);

}  // namespace normforge
