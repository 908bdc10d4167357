#pragma once

#include "normforge/rational.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace normforge {

/// A point of a body attaining its support value in a given direction.
struct Support {
  Rat value;
  RatVec point;
};

/// Symmetric convex body described by its support function. Bodies are
/// immutable and may be shared between threads.
class Body {
 public:
  virtual ~Body() = default;

  virtual Index dim() const = 0;
  /// max over the body of y . p, together with an attaining point.
  virtual Support support(const RatVec& y) const = 0;
  /// Minkowski gauge. The default solves the decomposition LP by column
  /// generation over support points; it is exact.
  virtual Rat gauge(const RatVec& x) const;

  bool contains(const RatVec& x) const { return gauge(x) <= 1; }
};

using BodyPtr = std::shared_ptr<const Body>;

struct GaugeCertificate {
  Rat value;
  RatVec dual;                 // y with support(y) <= 1 and y . x = value
  std::vector<RatVec> points;  // body points
  std::vector<Rat> weights;    // nonnegative, summing to value
};

/// Exact gauge with primal and dual certificates. The body must be
/// full-dimensional.
GaugeCertificate cg_gauge(const Body& body, const RatVec& x);

/// co{+-g}. Generators need not be extreme.
class GeneratorBody final : public Body {
 public:
  explicit GeneratorBody(std::vector<RatVec> generators);
  Index dim() const override { return dim_; }
  Support support(const RatVec& y) const override;
  const std::vector<RatVec>& generators() const { return generators_; }

 private:
  Index dim_;
  std::vector<RatVec> generators_;
};

/// c * K for c > 0.
class ScaledBody final : public Body {
 public:
  ScaledBody(BodyPtr inner, Rat factor);
  Index dim() const override { return inner_->dim(); }
  Support support(const RatVec& y) const override;
  Rat gauge(const RatVec& x) const override;

 private:
  BodyPtr inner_;
  Rat factor_;
};

/// Image of a body under the coordinate injection e_i -> e_{coords[i]}.
/// Lower dimensional in its ambient space; use inside unions or joins.
class EmbeddedBody final : public Body {
 public:
  EmbeddedBody(BodyPtr inner, Index ambient, std::vector<Index> coords);
  Index dim() const override { return ambient_; }
  Support support(const RatVec& y) const override;

 private:
  BodyPtr inner_;
  Index ambient_;
  std::vector<Index> coords_;
};

/// co(K_1 u K_2 u ...).
class HullUnionBody final : public Body {
 public:
  explicit HullUnionBody(std::vector<BodyPtr> parts);
  Index dim() const override { return dim_; }
  Support support(const RatVec& y) const override;

 private:
  Index dim_;
  std::vector<BodyPtr> parts_;
};

/// s*A + t*B.
class MinkowskiSumBody final : public Body {
 public:
  MinkowskiSumBody(BodyPtr a, BodyPtr b, Rat s, Rat t);
  Index dim() const override { return a_->dim(); }
  Support support(const RatVec& y) const override;

 private:
  BodyPtr a_;
  BodyPtr b_;
  Rat s_;
  Rat t_;
};

/// Vertices (u_j, v_j), j = 0..m, of an unconditional polygon in the closed
/// positive quadrant, ordered from (1, 0) to (0, 1).
struct QuadrantPolygon {
  std::vector<std::pair<Rat, Rat>> vertices;
  std::vector<std::pair<Rat, Rat>> normals;  // edge j: normals[j] . p = 1

  /// Inscribed in the unit circle at the rational points
  /// ((1 - s^2) / (1 + s^2), 2s / (1 + s^2)) with s = tan of half the angle,
  /// s = j / m for j = 0..m.
  static QuadrantPolygon circle(int m);
  Rat gauge(const Rat& u, const Rat& v) const;  // u, v >= 0
  /// Square of the smallest Euclidean norm on the boundary.
  Rat min_radius_squared() const;
};

/// {(a, b) : (|a|_A, |b|_B) in Q}, with A on coordinates left and B on
/// coordinates right of the ambient space.
class JoinBody final : public Body {
 public:
  JoinBody(BodyPtr a, std::vector<Index> left, BodyPtr b, std::vector<Index> right,
           std::shared_ptr<const QuadrantPolygon> q);
  Index dim() const override { return dim_; }
  Support support(const RatVec& y) const override;
  Rat gauge(const RatVec& x) const override;
  /// All extreme points, given those of the two factors.
  std::vector<RatVec> combine(const std::vector<RatVec>& left_points,
                              const std::vector<RatVec>& right_points) const;

 private:
  BodyPtr a_;
  BodyPtr b_;
  std::vector<Index> left_;
  std::vector<Index> right_;
  std::shared_ptr<const QuadrantPolygon> q_;
  Index dim_;
};

RatVec gather(const RatVec& x, const std::vector<Index>& coords);

}  // namespace normforge
