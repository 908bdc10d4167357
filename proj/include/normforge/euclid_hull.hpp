#pragma once

#include "normforge/interval.hpp"
#include "normforge/rational.hpp"

#include <vector>

namespace normforge {

/// The body co({+-v_i} u r*B) with B the Euclidean unit ball and r^2
/// rational. Its gauge is a + sqrt(b) with rational a, b and is computed
/// exactly from the optimality conditions of the dual program
///   max y . x  subject to  |v_i . y| <= 1,  |y|^2 <= 1 / r^2.
class EuclidHull {
 public:
  EuclidHull(std::vector<RatVec> vertices, Rat radius_squared);

  Index dim() const { return dim_; }
  QuadSurd gauge(const RatVec& x) const;
  CertInterval gauge_interval(const RatVec& x, const Rat& eps) const;

 private:
  struct Face {
    std::vector<std::size_t> rows;
    RatVec signs;
    RatMat projector;  // onto the null space of the active rows
    RatVec y0;         // least-norm point of the active affine set
    Rat y0_norm2;
    bool y0_feasible = false;
  };

  bool linear_ok(const RatVec& y) const;

  Index dim_;
  std::vector<RatVec> vertices_;
  Rat dual_radius2_;
  std::vector<Face> faces_;
};

}  // namespace normforge
